"""Co-trees: posets with a greatest element whose principal upsets are chains.

A co-tree is the order dual of a rooted tree: the co-root is the root and
every other element hangs below its unique immediate successor.  Isomorphism
classes are identified by an AHU-style parenthesis code.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .multiset import Multiset
from .poset import Poset, classify, order_embedding, poset_from_covers

CanonicalCode = str

SINGLETON_CODE: CanonicalCode = "()"


class ParamError(ValueError):
    pass


class SingletonError(ValueError):
    pass


class EmptyPartsError(ValueError):
    pass


class NotACotreeError(ValueError):
    pass


@dataclass(frozen=True)
class CoTree:
    poset: Poset
    coroot: int

    @classmethod
    def from_poset(cls, P: Poset) -> "CoTree":
        if P.n == 0:
            raise NotACotreeError("the empty poset is not a co-tree")
        if not classify(P).is_cotree:
            raise NotACotreeError("poset is not a co-tree")
        (top,) = P.maximal()
        return cls(P, top)

    @classmethod
    def from_parents(cls, parents: Sequence[int | None]) -> "CoTree":
        """``parents[x]`` is the immediate successor of ``x`` (None for the co-root)."""
        pairs = [(x, p) for x, p in enumerate(parents) if p is not None]
        roots = [x for x, p in enumerate(parents) if p is None]
        if len(roots) != 1:
            raise NotACotreeError("exactly one element must lack a parent")
        return cls(poset_from_covers(len(parents), pairs), roots[0])

    def __len__(self) -> int:
        return self.poset.n

    @property
    def n(self) -> int:
        return self.poset.n

    @cached_property
    def parent(self) -> tuple[int | None, ...]:
        out: list[int | None] = [None] * self.n
        for x, y in self.poset.covers:
            out[x] = y
        return tuple(out)

    @cached_property
    def children(self) -> tuple[tuple[int, ...], ...]:
        return self.poset.lower_covers

    @cached_property
    def level(self) -> tuple[int, ...]:
        """Distance from the co-root (co-root has level 0)."""
        return tuple(bin(m).count("1") - 1 for m in self.poset.up)

    @cached_property
    def node_codes(self) -> tuple[CanonicalCode, ...]:
        codes: list[str] = [""] * self.n
        for x in sorted(range(self.n), key=lambda v: -self.level[v]):
            codes[x] = "(" + "".join(sorted(codes[c] for c in self.children[x])) + ")"
        return tuple(codes)

    @property
    def code(self) -> CanonicalCode:
        return self.node_codes[self.coroot]

    def is_chain(self) -> bool:
        return all(len(c) <= 1 for c in self.children)

    def subtree(self, x: int) -> "CoTree":
        """The co-tree ``↓x``, relabelled in increasing element order."""
        elems = sorted(_bits(self.poset.down[x]))
        return CoTree(self.poset.induced(elems), elems.index(x))


def _bits(mask: int) -> Iterator[int]:
    x = 0
    while mask:
        if mask & 1:
            yield x
        mask >>= 1
        x += 1


def canonical_code(T: CoTree) -> CanonicalCode:
    return T.code


def _split_code(code: CanonicalCode) -> list[CanonicalCode]:
    """Child codes of the root of ``code``."""
    inner = code[1:-1]
    out, depth, start = [], 0, 0
    for i, ch in enumerate(inner):
        depth += 1 if ch == "(" else -1
        if depth == 0:
            out.append(inner[start : i + 1])
            start = i + 1
    return out


def code_size(code: CanonicalCode) -> int:
    return len(code) // 2


@lru_cache(maxsize=None)
def cotree_from_code(code: CanonicalCode) -> CoTree:
    """Canonical labelling: co-root 0, then preorder with children in code order."""
    parents: list[int | None] = []

    def build(c: str, parent: int | None):
        me = len(parents)
        parents.append(parent)
        for child in _split_code(c):
            build(child, me)

    build(code, None)
    return CoTree.from_parents(parents)


# -- standard families -------------------------------------------------------

def comb(n: int) -> CoTree:
    """The n-comb: spine ``c_1 < ... < c_n`` with a leaf ``c_i'`` below each ``c_i``.

    Element ``2(i-1)`` is ``c_i`` and ``2(i-1)+1`` is ``c_i'``.
    """
    if n < 1:
        raise ParamError("comb needs n >= 1")
    pairs = []
    for i in range(n):
        pairs.append((2 * i + 1, 2 * i))
        if i + 1 < n:
            pairs.append((2 * i, 2 * i + 2))
    return CoTree(poset_from_covers(2 * n, pairs), 2 * (n - 1))


def hcomb(n: int) -> CoTree:
    """The n-comb with handle: spine ``y_0 < y_1 < ... < y_n``, leaves ``y_i'`` below ``y_i``.

    Element 0 is ``y_0``; ``y_i`` is ``2i - 1`` and ``y_i'`` is ``2i``.
    """
    if n < 0:
        raise ParamError("hcomb needs n >= 0")
    pairs = []
    for i in range(1, n + 1):
        prev = 0 if i == 1 else 2 * i - 3
        pairs.append((prev, 2 * i - 1))
        pairs.append((2 * i, 2 * i - 1))
    return CoTree(poset_from_covers(2 * n + 1, pairs), 0 if n == 0 else 2 * n - 1)


def chain(length: int) -> CoTree:
    """``length`` elements, ``0 < 1 < ... < length-1``."""
    if length < 1:
        raise ParamError("chain needs length >= 1")
    return CoTree(poset_from_covers(length, [(i, i + 1) for i in range(length - 1)]), length - 1)


def tau(m: int, k: int) -> CoTree:
    """Chain ``x_0 > ... > x_m`` with ``k+1`` minimal elements below ``x_m``.

    ``x_i`` is element ``i`` and ``y_j`` is ``m + 1 + j``; ``tau(m, 0)`` is the
    ``(m+2)``-chain.
    """
    if m < 0 or k < 0:
        raise ParamError("tau needs m, k >= 0")
    pairs = [(i + 1, i) for i in range(m)]
    pairs += [(m + 1 + j, m) for j in range(k + 1)]
    return CoTree(poset_from_covers(m + k + 2, pairs), 0)


def make_standard(kind: str, *params: int) -> CoTree:
    builders: dict[str, Callable[..., CoTree]] = {
        "comb": comb, "hcomb": hcomb, "chain": chain, "tau": tau,
    }
    if kind not in builders:
        raise ParamError(f"unknown family {kind!r}")
    arity = 2 if kind == "tau" else 1
    if len(params) != arity:
        raise ParamError(f"{kind} takes {arity} parameter(s)")
    return builders[kind](*params)


SINGLETON = chain(1)


# -- comb numbers and the structure decomposition -----------------------------

@dataclass(frozen=True)
class Decomposition:
    m: int
    k: int
    parts: Multiset

    @property
    def upper(self) -> CoTree:
        return tau(self.m, self.k)


def _branch_point(T: CoTree) -> int | None:
    """Greatest element with at least two immediate predecessors."""
    x = T.coroot
    while True:
        kids = T.children[x]
        if len(kids) >= 2:
            return x
        if not kids:
            return None
        x = kids[0]


def decompose(T: CoTree) -> Decomposition:
    if T.n < 2:
        raise SingletonError("cannot decompose the singleton")
    z = _branch_point(T)
    if z is None:
        return Decomposition(T.n - 2, 0, Multiset.of([SINGLETON_CODE], carrier="cotree"))
    kids = T.children[z]
    parts = Multiset.of((T.node_codes[y] for y in kids), carrier="cotree")
    return Decomposition(T.level[z], len(kids) - 1, parts)


def _as_cotree(part: CoTree | CanonicalCode) -> CoTree:
    return cotree_from_code(part) if isinstance(part, str) else part


def reconstruct(m: int, parts: Iterable[CoTree | CanonicalCode] | Multiset) -> CoTree:
    """Chain ``x_0 > ... > x_m`` with each part's co-root an immediate predecessor of ``x_m``."""
    if isinstance(parts, Multiset):
        parts = parts.occurrences()
    trees = [_as_cotree(p) for p in parts]
    if not trees:
        raise EmptyPartsError("reconstruct needs at least one part")
    if m < 0:
        raise ParamError("m must be >= 0")
    parents: list[int | None] = [None] + list(range(m))
    for Y in trees:
        offset = len(parents)
        for x in range(Y.n):
            p = Y.parent[x]
            parents.append(m if p is None else offset + p)
    return CoTree.from_parents(parents)


@lru_cache(maxsize=None)
def _comb_number_of_code(code: CanonicalCode) -> int:
    T = cotree_from_code(code)
    if T.n == 1:
        return 0
    if T.is_chain():
        return 1
    d = decompose(T)
    return 1 + max(_comb_number_of_code(c) for c in d.parts.universe())


def comb_number(T: CoTree) -> int:
    """Largest ``n`` with the n-comb order-embeddable in ``T`` (0 if none)."""
    return _comb_number_of_code(T.code)


def comb_number_bruteforce(T: CoTree) -> int:
    n = 0
    while 2 * (n + 1) <= T.n and order_embedding(comb(n + 1).poset, T.poset) is not None:
        n += 1
    return n


def in_T(T: CoTree, n: int) -> bool:
    """Whether ``T`` omits the n-comb."""
    if n < 1:
        raise ParamError("T_n is defined for n >= 1")
    return comb_number(T) < n


# -- enumeration ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _codes_of_size(n: int) -> tuple[CanonicalCode, ...]:
    if n == 1:
        return (SINGLETON_CODE,)
    out = [
        "(" + "".join(sorted(forest)) + ")"
        for forest in _forests(n - 1, (0, ""))
    ]
    return tuple(sorted(set(out)))


def _forests(total: int, lower: tuple[int, str]) -> Iterator[tuple[str, ...]]:
    """Multisets of trees of total size ``total``, keys nondecreasing from ``lower``."""
    if total == 0:
        yield ()
        return
    for size in range(lower[0], total + 1):
        if size == 0:
            continue
        for code in _codes_of_size(size):
            if (size, code) < lower:
                continue
            for rest in _forests(total - size, (size, code)):
                yield (code,) + rest


def enumerate_cotrees(
    max_nodes: int, filter: Callable[[CoTree], bool] | None = None
) -> Iterator[CoTree]:
    """Every co-tree with at most ``max_nodes`` elements once, in code order."""
    if max_nodes < 1:
        raise ParamError("max_nodes must be >= 1")
    codes = sorted(c for n in range(1, max_nodes + 1) for c in _codes_of_size(n))
    for c in codes:
        T = cotree_from_code(c)
        if filter is None or filter(T):
            yield T


def cotrees_of_size(n: int) -> list[CoTree]:
    return [cotree_from_code(c) for c in _codes_of_size(n)]
