"""Finite posets on the elements ``0..n-1``.

Relations are stored as bitmasks: ``up[x]`` has bit ``y`` set iff ``x <= y``.
Everything here is immutable once built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence


class CycleError(ValueError):
    """The asserted pairs force ``x < x`` for some element."""


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


@dataclass(frozen=True)
class Poset:
    n: int
    up: tuple[int, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.up) != self.n:
            raise ValueError("up table has wrong length")

    # -- order queries -------------------------------------------------
    def leq(self, x: int, y: int) -> bool:
        return bool(self.up[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return x != y and self.leq(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return self.leq(x, y) or self.leq(y, x)

    @cached_property
    def down(self) -> tuple[int, ...]:
        d = [0] * self.n
        for x in range(self.n):
            for y in bits(self.up[x]):
                d[y] |= 1 << x
        return tuple(d)

    @property
    def rel(self) -> tuple[tuple[bool, ...], ...]:
        """Reflexive comparability table, ``rel[x][y]`` iff ``x <= y``."""
        return tuple(tuple(self.leq(x, y) for y in range(self.n)) for x in range(self.n))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Hasse pairs ``(x, y)`` with ``x`` an immediate predecessor of ``y``."""
        out = []
        for x in range(self.n):
            strict = self.up[x] & ~(1 << x)
            for y in bits(strict):
                between = strict & self.down[y] & ~(1 << y)
                if not between:
                    out.append((x, y))
        return tuple(sorted(out))

    @cached_property
    def lower_covers(self) -> tuple[tuple[int, ...], ...]:
        """``lower_covers[y]`` lists the immediate predecessors of ``y``."""
        lc: list[list[int]] = [[] for _ in range(self.n)]
        for x, y in self.covers:
            lc[y].append(x)
        return tuple(tuple(v) for v in lc)

    @cached_property
    def upper_covers(self) -> tuple[tuple[int, ...], ...]:
        uc: list[list[int]] = [[] for _ in range(self.n)]
        for x, y in self.covers:
            uc[x].append(y)
        return tuple(tuple(v) for v in uc)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def maximal(self) -> list[int]:
        return [x for x in range(self.n) if self.up[x] == 1 << x]

    def minimal(self) -> list[int]:
        return [x for x in range(self.n) if self.down[x] == 1 << x]

    def upset_of(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.up[x]
        return out

    def downset_of(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= self.down[x]
        return out

    def is_upset(self, mask: int) -> bool:
        return self.upset_of(mask) == mask

    def is_chain(self, mask: int | None = None) -> bool:
        elems = list(bits(self.full if mask is None else mask))
        return all(self.comparable(a, b) for a, b in itertools.combinations(elems, 2))

    def height(self) -> int:
        """Number of elements in a longest chain."""
        depth = [0] * self.n
        for x in self.linear_extension():
            below = [depth[y] for y in bits(self.down[x] & ~(1 << x))]
            depth[x] = 1 + max(below, default=0)
        return max(depth, default=0)

    def linear_extension(self) -> list[int]:
        return sorted(range(self.n), key=lambda x: bin(self.down[x]).count("1"))

    def induced(self, elements: Sequence[int]) -> "Poset":
        """Subposet on ``elements``, relabelled ``0..len-1`` in the given order."""
        idx = {e: i for i, e in enumerate(elements)}
        ups = []
        for e in elements:
            ups.append(mask_of(idx[y] for y in bits(self.up[e]) if y in idx))
        return Poset(len(elements), tuple(ups))

    def relabel(self, perm: Sequence[int]) -> "Poset":
        """Poset with element ``x`` renamed ``perm[x]``."""
        ups = [0] * self.n
        for x in range(self.n):
            ups[perm[x]] = mask_of(perm[y] for y in bits(self.up[x]))
        return Poset(self.n, tuple(ups))


def poset_from_covers(n: int, pairs: Iterable[tuple[int, int]]) -> Poset:
    """Build the poset generated by ``i < j`` for every pair (closure computed)."""
    pairs = list(pairs)
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"pair ({i}, {j}) out of range for n={n}")
        if i == j:
            raise CycleError(f"pair ({i}, {i}) asserts {i} < {i}")
    up = [1 << x for x in range(n)]
    for i, j in pairs:
        up[i] |= 1 << j
    # Warshall on bitmasks
    for k in range(n):
        kb = 1 << k
        for x in range(n):
            if up[x] & kb:
                up[x] |= up[k]
    for x in range(n):
        for y in bits(up[x] & ~(1 << x)):
            if up[y] >> x & 1:
                raise CycleError(f"{x} < {y} < {x}")
    return Poset(n, tuple(up))


def chain_poset(length: int) -> Poset:
    return poset_from_covers(length, [(i, i + 1) for i in range(length - 1)])


def antichain_poset(n: int) -> Poset:
    return Poset(n, tuple(1 << x for x in range(n)))


def cone(P: Poset, x: int, direction: str = "up") -> frozenset[int]:
    if not 0 <= x < P.n:
        raise IndexError(x)
    if direction == "up":
        return frozenset(bits(P.up[x]))
    if direction == "down":
        return frozenset(bits(P.down[x]))
    raise ValueError(f"direction must be 'up' or 'down', not {direction!r}")


def _upset_key(mask: int) -> tuple[int, list[int]]:
    return (bin(mask).count("1"), list(bits(mask)))


def upset_masks(P: Poset) -> list[int]:
    """All upsets as bitmasks, sorted by size then element list."""
    found: list[int] = []

    # Each upset is generated by exactly one antichain (its minimal elements).
    def extend(start: int, antichain_up: int, blocked: int):
        found.append(antichain_up)
        for x in range(start, P.n):
            if blocked >> x & 1:
                continue
            extend(x + 1, antichain_up | P.up[x], blocked | P.up[x] | P.down[x])

    extend(0, 0, 0)
    found.sort(key=_upset_key)
    return found


def all_upsets(P: Poset) -> list[frozenset[int]]:
    return [frozenset(bits(m)) for m in upset_masks(P)]


def components(P: Poset) -> list[frozenset[int]]:
    """Connected components of the comparability graph, by least element."""
    seen = 0
    comps = []
    for x in range(P.n):
        if seen >> x & 1:
            continue
        comp = 1 << x
        frontier = comp
        while frontier:
            nxt = 0
            for y in bits(frontier):
                nxt |= P.up[y] | P.down[y]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(frozenset(bits(comp)))
    return comps


@dataclass(frozen=True)
class PosetClass:
    kind: str
    components: tuple[frozenset[int], ...]

    @property
    def is_cotree(self) -> bool:
        return self.kind in ("singleton", "chain", "cotree-nonchain")

    @property
    def is_coforest(self) -> bool:
        return self.kind != "other"


def _component_is_cotree(P: Poset, comp: frozenset[int]) -> bool:
    cm = mask_of(comp)
    tops = [x for x in comp if P.up[x] & cm == 1 << x]
    if len(tops) != 1:
        return False
    return all(P.is_chain(P.up[x]) for x in comp)


def classify(P: Poset) -> PosetClass:
    comps = tuple(components(P))
    if P.n == 0:
        return PosetClass("coforest-noncotree", comps)
    cotree_parts = [_component_is_cotree(P, c) for c in comps]
    if len(comps) == 1 and cotree_parts[0]:
        if P.n == 1:
            kind = "singleton"
        elif P.is_chain():
            kind = "chain"
        else:
            kind = "cotree-nonchain"
    elif all(cotree_parts):
        kind = "coforest-noncotree"
    else:
        kind = "other"
    return PosetClass(kind, comps)


@dataclass(frozen=True)
class EmbeddingWitness:
    map: tuple[int, ...]


def order_embedding(src: Poset, tgt: Poset) -> EmbeddingWitness | None:
    """First order embedding ``src -> tgt`` in smallest-image-first order."""
    if src.n > tgt.n:
        return None
    assign = [-1] * src.n
    used = 0

    def ok(x: int, c: int) -> bool:
        for y in range(x):
            d = assign[y]
            if src.leq(y, x) != tgt.leq(d, c) or src.leq(x, y) != tgt.leq(c, d):
                return False
        return True

    def go(x: int) -> bool:
        nonlocal used
        if x == src.n:
            return True
        for c in range(tgt.n):
            if used >> c & 1 or not ok(x, c):
                continue
            assign[x] = c
            used |= 1 << c
            if go(x + 1):
                return True
            used &= ~(1 << c)
        assign[x] = -1
        return False

    return EmbeddingWitness(tuple(assign)) if go(0) else None


def disjoint_union(parts: Sequence[Poset]) -> Poset:
    ups: list[int] = []
    offset = 0
    for P in parts:
        ups.extend(m << offset for m in P.up)
        offset += P.n
    return Poset(offset, tuple(ups))


# -- exhaustive enumeration (used by the oracles and the acceptance checks) --

def canonical_form(P: Poset) -> tuple[int, ...]:
    """Isomorphism invariant by brute force over all relabellings."""
    best = None
    for perm in itertools.permutations(range(P.n)):
        key = P.relabel(perm).up
        if best is None or key < best:
            best = key
    return best if best is not None else ()


def isomorphic_bruteforce(P: Poset, Q: Poset) -> bool:
    if P.n != Q.n:
        return False
    return any(P.relabel(perm).up == Q.up for perm in itertools.permutations(range(P.n)))


def all_posets(n: int) -> list[Poset]:
    """One representative per isomorphism class of ``n``-element posets.

    Every finite poset has a natural labelling (``x < y`` only when the index
    of ``x`` is smaller), so transitively closed subsets of index-increasing
    pairs cover all classes; duplicates are removed by :func:`canonical_form`.
    """
    pairs = list(itertools.combinations(range(n), 2))
    seen: dict[tuple[int, ...], Poset] = {}
    for chosen in itertools.product((False, True), repeat=len(pairs)):
        up = [1 << x for x in range(n)]
        for (i, j), c in zip(pairs, chosen):
            if c:
                up[i] |= 1 << j
        closed = all(
            (up[y] & ~up[x]) == 0 for x in range(n) for y in bits(up[x])
        )
        if not closed:
            continue
        P = Poset(n, tuple(up))
        key = canonical_form(P)
        if key not in seen:
            seen[key] = Poset(n, key)
    return [seen[k] for k in sorted(seen)]


# -- text format -------------------------------------------------------------

def format_poset(P: Poset) -> str:
    lines = [f"poset {P.n}"]
    lines += [f"{i} {j}" for i, j in P.covers]
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> Poset:
    header = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split()
        if header is None:
            if len(toks) != 2 or toks[0] != "poset":
                raise ValueError(f"line {lineno}: expected 'poset <n>' header")
            header = int(toks[1])
            continue
        if len(toks) != 2:
            raise ValueError(f"line {lineno}: expected '<i> <j>'")
        pairs.append((int(toks[0]), int(toks[1])))
    if header is None:
        raise ValueError("missing 'poset <n>' header")
    return poset_from_covers(header, pairs)
