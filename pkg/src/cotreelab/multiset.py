"""Finite multisets over an ordered carrier.

Two orders on multisets:

* embeddability ``N ⪯ M``: an injective occurrence map raising every element;
* projectivity ``N << M``: a surjective occurrence map ``M -> N`` lowering
  every element.

Occurrences are addressed by their position in :meth:`Multiset.occurrences`.
"""

from __future__ import annotations

import operator
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable

from .matching import max_matching


class CarrierMismatch(ValueError):
    pass


class SizeError(ValueError):
    pass


def _sorted_items(items: Iterable[Hashable]) -> list:
    items = list(items)
    try:
        return sorted(items)
    except TypeError:
        return sorted(items, key=repr)


@dataclass(frozen=True)
class Multiset:
    entries: tuple[tuple[Any, int], ...]
    carrier: str | None = None

    @classmethod
    def of(cls, items: Iterable[Hashable], carrier: str | None = None) -> "Multiset":
        counts = Counter(items)
        return cls(tuple((x, counts[x]) for x in _sorted_items(counts)), carrier)

    def __post_init__(self):
        for _, mult in self.entries:
            if mult < 1:
                raise ValueError("multiplicities must be positive")

    def __len__(self) -> int:
        return sum(m for _, m in self.entries)

    def occurrences(self) -> list:
        return [x for x, m in self.entries for _ in range(m)]

    def universe(self) -> list:
        return [x for x, _ in self.entries]

    def multiplicity(self, item: Hashable) -> int:
        return dict(self.entries).get(item, 0)

    def __str__(self) -> str:
        return "[" + ",".join(str(x) for x in self.occurrences()) + "]"


@dataclass
class Order:
    """A carrier order ``leq(a, b)`` meaning ``a <= b``, memoized per instance."""

    name: str
    fn: Callable[[Any, Any], bool]
    _memo: dict = field(default_factory=dict, repr=False)

    def leq(self, a, b) -> bool:
        key = (a, b)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._memo[key] = bool(self.fn(a, b))
        return hit


def omega_order() -> Order:
    return Order("omega", operator.le)


def cotree_order() -> Order:
    """Canonical co-tree codes ordered by the bi-p-morphic image relation."""
    from .morphism import leq_p_codes

    return Order("cotree", leq_p_codes)


@dataclass(frozen=True)
class MsetMapWitness:
    """``pairs[i] = (a, b)`` sends domain occurrence ``a`` to codomain occurrence ``b``."""

    domain: Multiset
    codomain: Multiset
    pairs: tuple[tuple[int, int], ...]

    def items(self) -> list[tuple[Any, Any]]:
        dom, cod = self.domain.occurrences(), self.codomain.occurrences()
        return [(dom[a], cod[b]) for a, b in self.pairs]


def _check_carrier(N: Multiset, M: Multiset, ord: Order):
    names = {c for c in (N.carrier, M.carrier) if c is not None}
    if len(names) > 1 or (names and ord.name not in names):
        raise CarrierMismatch(f"carriers {N.carrier!r}/{M.carrier!r} vs order {ord.name!r}")


def embeddable(N: Multiset, M: Multiset, ord: Order) -> MsetMapWitness | None:
    """Witness for ``N ⪯ M``: injective ``N -> M`` with ``q <= f(q)``."""
    _check_carrier(N, M, ord)
    ns, ms = N.occurrences(), M.occurrences()
    if len(ns) > len(ms):
        return None
    adj = [[j for j, p in enumerate(ms) if ord.leq(q, p)] for q in ns]
    match = max_matching(len(ns), len(ms), adj)
    if any(v == -1 for v in match):
        return None
    return MsetMapWitness(N, M, tuple(enumerate(match)))


def projects(N: Multiset, M: Multiset, ord: Order) -> MsetMapWitness | None:
    """Witness for ``N << M``: surjective ``M -> N`` with ``f(p) <= p``.

    Decided as ``N ⪯ M`` plus every element of ``M`` dominating some element
    of ``N``; the surjection inverts the embedding on its image and sends
    every other occurrence to the first element of ``N`` below it.
    """
    _check_carrier(N, M, ord)
    ns, ms = N.occurrences(), M.occurrences()
    emb = embeddable(N, M, ord)
    if emb is None:
        return None
    inverse = {b: a for a, b in emb.pairs}
    pairs = []
    for j, p in enumerate(ms):
        if j in inverse:
            pairs.append((j, inverse[j]))
            continue
        below = next((i for i, q in enumerate(ns) if ord.leq(q, p)), None)
        if below is None:
            return None
        pairs.append((j, below))
    return MsetMapWitness(M, N, tuple(pairs))


SCAN_BOUND = 8


def projects_bruteforce(N: Multiset, M: Multiset, ord: Order) -> MsetMapWitness | None:
    """Search the surjective occurrence maps ``M -> N`` directly."""
    _check_carrier(N, M, ord)
    ns, ms = N.occurrences(), M.occurrences()
    if len(ms) > SCAN_BOUND:
        raise SizeError(f"l(M) = {len(ms)} exceeds the scan bound {SCAN_BOUND}")
    if len(ns) > len(ms):
        return None
    options = [[i for i, q in enumerate(ns) if ord.leq(q, p)] for p in ms]
    choice = [-1] * len(ms)
    hits = [0] * len(ns)

    def go(j: int, uncovered: int) -> bool:
        if uncovered > len(ms) - j:
            return False
        if j == len(ms):
            return True
        for i in options[j]:
            choice[j] = i
            hits[i] += 1
            if go(j + 1, uncovered - (hits[i] == 1)):
                return True
            hits[i] -= 1
        return False

    if go(0, len(ns)):
        return MsetMapWitness(M, N, tuple(enumerate(choice)))
    return None


def is_surjective(w: MsetMapWitness) -> bool:
    sources = sorted(a for a, _ in w.pairs)
    return sources == list(range(len(w.domain))) and {b for _, b in w.pairs} == set(
        range(len(w.codomain))
    )


def is_injective(w: MsetMapWitness) -> bool:
    targets = [b for _, b in w.pairs]
    return len(set(targets)) == len(targets) == len(w.domain)
