"""Bi-p-morphisms between finite posets and the bi-p-morphic image relation."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .cotree import CanonicalCode, CoTree, NotACotreeError, cotree_from_code
from .poset import Poset, bits


class ShapeError(ValueError):
    pass


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class PosetMap:
    src: Poset
    tgt: Poset
    map: tuple[int, ...]

    def __post_init__(self):
        if len(self.map) != self.src.n:
            raise ShapeError(f"map has {len(self.map)} entries for {self.src.n} elements")
        if any(not 0 <= y < self.tgt.n for y in self.map):
            raise ShapeError("map sends an element outside the target")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self, mask: int) -> int:
        out = 0
        for x in bits(mask):
            out |= 1 << self.map[x]
        return out

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.tgt.n


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    condition: str | None = None  # "order", "up" or "down"
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.ok


def check_bi_p_morphism(f: PosetMap) -> MorphismReport:
    """Check order preservation, then Up, then Down; report the first failure.

    The witness is ``(x, z)`` for an order failure (``x <= z`` but not
    ``f(x) <= f(z)``) and ``(x, y)`` for a lifting failure (``y`` above or
    below ``f(x)`` with no preimage in the matching cone of ``x``).
    """
    X, Y = f.src, f.tgt
    for x in range(X.n):
        for z in bits(X.up[x]):
            if not Y.leq(f.map[x], f.map[z]):
                return MorphismReport(False, "order", (x, z))
    for x in range(X.n):
        missing = Y.up[f.map[x]] & ~f.image(X.up[x])
        if missing:
            return MorphismReport(False, "up", (x, next(bits(missing))))
    for x in range(X.n):
        missing = Y.down[f.map[x]] & ~f.image(X.down[x])
        if missing:
            return MorphismReport(False, "down", (x, next(bits(missing))))
    return MorphismReport(True)


def _chain_depths(P: Poset) -> tuple[list[int], list[int]]:
    """Longest chain (element count) below and above each element."""
    below = [0] * P.n
    above = [0] * P.n
    order = P.linear_extension()
    for x in order:
        below[x] = 1 + max((below[y] for y in bits(P.down[x] & ~(1 << x))), default=0)
    for x in reversed(order):
        above[x] = 1 + max((above[y] for y in bits(P.up[x] & ~(1 << x))), default=0)
    return below, above


def _search(src: Poset, tgt: Poset, surjective: bool, cotrees: bool) -> Iterator[tuple[int, ...]]:
    """Yield bi-p-morphisms ``src -> tgt`` in lexicographic order.

    With ``cotrees`` set both posets must be co-trees; the search then only
    tries images allowed by the co-tree morphism laws (co-root to co-root,
    covers to covers or equalities).
    """
    n, m = src.n, tgt.n
    if n == 0 or m == 0 or (surjective and m > n):
        return
    sb, sa = _chain_depths(src)
    tb, ta = _chain_depths(tgt)
    pop = int.bit_count
    cand = []
    for x in range(n):
        cand.append([
            c for c in range(m)
            if pop(src.down[x]) >= pop(tgt.down[c]) and pop(src.up[x]) >= pop(tgt.up[c])
            and sb[x] >= tb[c] and sa[x] >= ta[c]
        ])
    if cotrees:
        (s_root,) = src.maximal()
        (t_root,) = tgt.maximal()
        cand[s_root] = [t_root] if t_root in cand[s_root] else []
        tgt_lc = [set(tgt.lower_covers[c]) for c in range(m)]
    # Up/Down at w can be checked once its whole cone is assigned.
    up_ready: list[list[int]] = [[] for _ in range(n)]
    down_ready: list[list[int]] = [[] for _ in range(n)]
    for w in range(n):
        up_ready[max(bits(src.up[w]))].append(w)
        down_ready[max(bits(src.down[w]))].append(w)
    src_lc = src.lower_covers
    src_uc = src.upper_covers
    f = [-1] * n
    hits = [0] * m

    def consistent(x: int, c: int) -> bool:
        for y in bits(src.down[x] & ((1 << x) - 1)):
            if not tgt.leq(f[y], c):
                return False
        for y in bits(src.up[x] & ((1 << x) - 1)):
            if not tgt.leq(c, f[y]):
                return False
        if cotrees:
            for y in src_uc[x]:
                if y < x and f[y] != c and c not in tgt_lc[f[y]]:
                    return False
            for y in src_lc[x]:
                if y < x and f[y] != c and f[y] not in tgt_lc[c]:
                    return False
        return True

    def lifts_ok(x: int) -> bool:
        for w in up_ready[x]:
            img = 0
            for z in bits(src.up[w]):
                img |= 1 << f[z]
            if tgt.up[f[w]] & ~img:
                return False
        for w in down_ready[x]:
            img = 0
            for z in bits(src.down[w]):
                img |= 1 << f[z]
            if tgt.down[f[w]] & ~img:
                return False
        return True

    def go(x: int, unhit: int) -> Iterator[tuple[int, ...]]:
        if surjective and unhit > n - x:
            return
        if x == n:
            yield tuple(f)
            return
        for c in cand[x]:
            if not consistent(x, c):
                continue
            f[x] = c
            hits[c] += 1
            if lifts_ok(x):
                yield from go(x + 1, unhit - (hits[c] == 1))
            hits[c] -= 1
        f[x] = -1

    yield from go(0, m)


def enumerate_bi_p_morphisms(src: Poset, tgt: Poset, surjective: bool = False) -> list[PosetMap]:
    return [PosetMap(src, tgt, mp) for mp in _search(src, tgt, surjective, cotrees=False)]


def _as_cotree(T: CoTree | Poset) -> CoTree:
    if isinstance(T, CoTree):
        return T
    try:
        return CoTree.from_poset(T)
    except NotACotreeError as exc:
        raise UsageError("the bi-p-morphic image relation is only defined on co-trees") from exc


def leq_p(target: CoTree | Poset, source: CoTree | Poset) -> PosetMap | None:
    """Least surjective bi-p-morphism ``source ->> target``, or None.

    Argument order follows ``target <=p source``.
    """
    target, source = _as_cotree(target), _as_cotree(source)
    for mp in _search(source.poset, target.poset, surjective=True, cotrees=True):
        return PosetMap(source.poset, target.poset, mp)
    return None


@lru_cache(maxsize=None)
def leq_p_codes(target: CanonicalCode, source: CanonicalCode) -> bool:
    if len(target) > len(source):
        return False
    if target == source:
        return True
    return leq_p(cotree_from_code(target), cotree_from_code(source)) is not None


def format_witness(f: PosetMap, target: CoTree | None = None, source: CoTree | None = None) -> str:
    src_code = source.code if source is not None else "?"
    tgt_code = target.code if target is not None else "?"
    lines = [f"# {src_code} ->> {tgt_code}"]
    lines += [f"{i} -> {j}" for i, j in enumerate(f.map)]
    return "\n".join(lines) + "\n"
