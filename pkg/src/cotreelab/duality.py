"""Finite bi-Heyting duality.

A finite poset ``X`` gives the algebra of its upsets with

    U -> V = X minus the downset generated by U \\ V
    U <- V = the upset generated by U \\ V

and a finite bi-Heyting algebra gives back the poset of its prime filters.
Algebras are stored as operation tables over element indices so the
algebra side never has to consult a base poset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .cotree import CoTree
from .formula import Binary, Const, Formula, Var, variables
from .multiset import SizeError
from .poset import Poset, bits, classify, mask_of, order_embedding, upset_masks


class EmptyPosetError(ValueError):
    pass


class ValuationError(ValueError):
    pass


class UnsupportedFeature(NotImplementedError):
    pass


Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class FiniteBHA:
    universe: tuple[int, ...]  # element labels; upset bitmasks for dual algebras
    meet: Table
    join: Table
    imp: Table
    coimp: Table
    bottom: int
    top: int
    base: Poset | None = None

    def __len__(self) -> int:
        return len(self.universe)

    def leq(self, a: int, b: int) -> bool:
        return self.meet[a][b] == a

    def laws_violations(self) -> list[str]:
        """Residuation laws and the equational bi-Heyting axioms, checked exhaustively."""
        out = []
        r = range(len(self))
        m, j, i, c = self.meet, self.join, self.imp, self.coimp
        for a, b, x in itertools.product(r, r, r):
            if self.leq(x, i[a][b]) != self.leq(m[x][a], b):
                out.append(f"imp residuation fails at a={a} b={b} c={x}")
            if self.leq(c[a][b], x) != self.leq(a, j[b][x]):
                out.append(f"coimp residuation fails at a={a} b={b} c={x}")
            if i[a][m[b][x]] != m[i[a][b]][i[a][x]]:
                out.append(f"p->(q&r) fails at {a},{b},{x}")
            if c[j[b][x]][a] != j[c[b][a]][c[x][a]]:
                out.append(f"(q|r)<-p fails at {a},{b},{x}")
        for a, b in itertools.product(r, r):
            if m[a][i[a][b]] != m[a][b]:
                out.append(f"p&(p->q) fails at {a},{b}")
            if m[b][i[a][b]] != b:
                out.append(f"q&(p->q) fails at {a},{b}")
            if j[a][c[b][a]] != j[a][b]:
                out.append(f"p|(q<-p) fails at {a},{b}")
            if j[b][c[b][a]] != b:
                out.append(f"q|(q<-p) fails at {a},{b}")
        for a in r:
            if i[a][a] != self.top:
                out.append(f"p->p fails at {a}")
            if c[a][a] != self.bottom:
                out.append(f"p<-p fails at {a}")
        return out


def _table(n: int, fn) -> Table:
    return tuple(tuple(fn(a, b) for b in range(n)) for a in range(n))


def dual_algebra(X: Poset, check: bool = False) -> FiniteBHA:
    if X.n == 0:
        raise EmptyPosetError("the dual algebra needs a nonempty poset")
    ups = upset_masks(X)
    index = {u: k for k, u in enumerate(ups)}
    n = len(ups)
    A = FiniteBHA(
        universe=tuple(ups),
        meet=_table(n, lambda a, b: index[ups[a] & ups[b]]),
        join=_table(n, lambda a, b: index[ups[a] | ups[b]]),
        imp=_table(n, lambda a, b: index[X.full & ~X.downset_of(ups[a] & ~ups[b])]),
        coimp=_table(n, lambda a, b: index[X.upset_of(ups[a] & ~ups[b])]),
        bottom=index[0],
        top=index[X.full],
        base=X,
    )
    if check:
        bad = A.laws_violations()
        if bad:
            raise AssertionError(bad[0])
    return A


def algebra_from_lattice(sets: Iterable[int]) -> FiniteBHA:
    """Bi-Heyting algebra of a finite distributive lattice of sets.

    ``->`` and ``<-`` are computed from the lattice order alone, as the
    greatest ``c`` with ``c & a <= b`` and the least ``c`` with ``a <= b | c``.
    """
    elems = sorted(set(sets), key=lambda s: (bin(s).count("1"), list(bits(s))))
    index = {s: k for k, s in enumerate(elems)}
    n = len(elems)
    sub = lambda a, b: elems[a] & ~elems[b] == 0  # noqa: E731
    meet = _table(n, lambda a, b: index[elems[a] & elems[b]])
    join = _table(n, lambda a, b: index[elems[a] | elems[b]])

    def imp(a, b):
        ok = [x for x in range(n) if sub(meet[x][a], b)]
        return index[_fold_or(elems[x] for x in ok)]

    def coimp(a, b):
        ok = [x for x in range(n) if sub(a, join[b][x])]
        return index[_fold_and((elems[x] for x in ok), elems[-1])]

    return FiniteBHA(
        universe=tuple(elems), meet=meet, join=join,
        imp=_table(n, imp), coimp=_table(n, coimp),
        bottom=0, top=n - 1,
    )


def _fold_or(masks: Iterable[int]) -> int:
    out = 0
    for m in masks:
        out |= m
    return out


def _fold_and(masks: Iterable[int], full: int) -> int:
    out = full
    for m in masks:
        out &= m
    return out


def join_irreducibles(A: FiniteBHA) -> list[int]:
    """Elements with exactly one lower cover, in universe order."""
    out = []
    for a in range(len(A)):
        if a == A.bottom:
            continue
        below = [b for b in range(len(A)) if b != a and A.leq(b, a)]
        maximal = [b for b in below if not any(c != b and A.leq(b, c) for c in below)]
        if len(maximal) == 1:
            out.append(a)
    return out


def prime_filter_poset(A: FiniteBHA) -> Poset:
    """Prime filters ordered by inclusion, one per join-irreducible ``j`` (the filter above ``j``)."""
    jis = join_irreducibles(A)
    filters = [mask_of(b for b in range(len(A)) if A.leq(j, b)) for j in jis]
    ups = []
    for f in filters:
        ups.append(mask_of(k for k, g in enumerate(filters) if f & ~g == 0))
    return Poset(len(jis), tuple(ups))


@dataclass(frozen=True)
class AlgebraEmbeddingWitness:
    map: tuple[int, ...]


def _preserves(A: FiniteBHA, B: FiniteBHA, f: list[int]) -> bool:
    if f[A.bottom] != B.bottom or f[A.top] != B.top:
        return False
    if len(set(f)) != len(f):
        return False
    for a in range(len(A)):
        fa = f[a]
        for b in range(len(A)):
            fb = f[b]
            if (
                f[A.meet[a][b]] != B.meet[fa][fb]
                or f[A.join[a][b]] != B.join[fa][fb]
                or f[A.imp[a][b]] != B.imp[fa][fb]
                or f[A.coimp[a][b]] != B.coimp[fa][fb]
            ):
                return False
    return True


def algebra_embedding(A: FiniteBHA, B: FiniteBHA) -> AlgebraEmbeddingWitness | None:
    """First embedding of ``A`` into ``B`` preserving all operations and bounds.

    A lattice homomorphism out of a finite distributive lattice is fixed by
    its values on join-irreducibles, so only those are searched.  Each
    join-irreducible ``j`` with lower cover ``j-`` satisfies ``j <- j- = j``,
    which the image must satisfy too.
    """
    jis = join_irreducibles(A)
    below = {j: [i for i in jis if i != j and A.leq(i, j)] for j in jis}
    img: dict[int, int] = {}

    def join_b(values: Iterable[int]) -> int:
        out = B.bottom
        for v in values:
            out = B.join[out][v]
        return out

    def extend() -> list[int]:
        f = []
        for a in range(len(A)):
            f.append(join_b(img[j] for j in jis if A.leq(j, a)))
        return f

    def go(t: int) -> list[int] | None:
        if t == len(jis):
            f = extend()
            return f if _preserves(A, B, f) else None
        j = jis[t]
        lower = join_b(img[i] for i in below[j])
        for c in range(len(B)):
            if c == B.bottom or B.coimp[c][lower] != c:
                continue
            if any(
                A.leq(i, j) != B.leq(img[i], c) or A.leq(j, i) != B.leq(c, img[i])
                for i in jis[:t]
            ):
                continue
            img[j] = c
            found = go(t + 1)
            if found is not None:
                return found
            del img[j]
        return None

    f = go(0)
    return AlgebraEmbeddingWitness(tuple(f)) if f is not None else None


# -- formulas ------------------------------------------------------------------

def _valuation_masks(X: Poset, val: Mapping[str, Iterable[int] | int]) -> dict[str, int]:
    out = {}
    for name, v in val.items():
        m = v if isinstance(v, int) else mask_of(v)
        if m & ~X.full or not X.is_upset(m):
            raise ValuationError(f"value of {name!r} is not an upset")
        out[name] = m
    return out


def _eval(X: Poset, val: Mapping[str, int], phi: Formula) -> int:
    if isinstance(phi, Var):
        if phi.name not in val:
            raise ValuationError(f"no value for variable {phi.name!r}")
        return val[phi.name]
    if isinstance(phi, Const):
        return X.full if phi.value else 0
    a = _eval(X, val, phi.left)
    b = _eval(X, val, phi.right)
    if phi.op == "&":
        return a & b
    if phi.op == "|":
        return a | b
    if phi.op == "->":
        return X.full & ~X.downset_of(a & ~b)
    return X.upset_of(a & ~b)


def eval_formula(X: Poset, val: Mapping[str, Iterable[int] | int], phi: Formula) -> frozenset[int]:
    """Upset of points forcing ``phi`` (computed with the algebra operations)."""
    return frozenset(bits(_eval(X, _valuation_masks(X, val), phi)))


def forces(X: Poset, val: Mapping[str, Iterable[int] | int], phi: Formula, x: int) -> bool:
    """Kripke forcing at a single point, by quantifying over cones."""
    masks = _valuation_masks(X, val)

    def f(phi: Formula, x: int) -> bool:
        if isinstance(phi, Var):
            return bool(masks[phi.name] >> x & 1)
        if isinstance(phi, Const):
            return bool(phi.value)
        if phi.op == "&":
            return f(phi.left, x) and f(phi.right, x)
        if phi.op == "|":
            return f(phi.left, x) or f(phi.right, x)
        if phi.op == "->":
            return all(not f(phi.left, y) or f(phi.right, y) for y in range(X.n) if X.leq(x, y))
        return any(f(phi.left, y) and not f(phi.right, y) for y in range(X.n) if X.leq(y, x))

    return f(phi, x)


@dataclass(frozen=True)
class ValidityResult:
    valid: bool
    valuation: dict[str, frozenset[int]] | None = None
    point: int | None = None

    def __bool__(self) -> bool:
        return self.valid


VALUATION_LIMIT = 1 << 20


def is_valid(X: Poset, phi: Formula) -> ValidityResult:
    """Check ``phi`` under every upset valuation; report the first refutation."""
    names = variables(phi)
    ups = upset_masks(X)
    if len(ups) ** len(names) > VALUATION_LIMIT:
        raise SizeError(f"{len(ups)}^{len(names)} valuations exceed the limit")
    for combo in itertools.product(ups, repeat=len(names)):
        val = dict(zip(names, combo))
        missing = X.full & ~_eval(X, val, phi)
        if missing:
            point = next(bits(missing))
            return ValidityResult(
                False, {k: frozenset(bits(v)) for k, v in val.items()}, point
            )
    return ValidityResult(True)


def subframe_refuted(X: Poset, Y: CoTree | Poset) -> bool:
    """Whether the dual of ``X`` refutes the subframe formula of ``Y``.

    Decided semantically: refuted exactly when ``Y`` order-embeds into ``X``.
    """
    if not classify(X).is_coforest:
        raise _usage_error("subframe_refuted needs a co-forest")
    Yp = Y.poset if isinstance(Y, CoTree) else Y
    return order_embedding(Yp, X) is not None


def subframe_formula(Y: CoTree) -> Formula:
    raise UnsupportedFeature("the syntax of subframe formulas is not constructed here")


def _usage_error(msg: str) -> Exception:
    from .morphism import UsageError

    return UsageError(msg)


# -- algebra text format -----------------------------------------------------

def format_algebra(A: FiniteBHA, tables: bool = True) -> str:
    lines = [f"bha {len(A)}"]
    for u in A.universe:
        lines.append("{" + " ".join(str(x) for x in bits(u)) + "}")
    if tables:
        r = range(len(A))
        lines += [f"imp {a} {b} -> {A.imp[a][b]}" for a in r for b in r]
        lines += [f"coimp {a} {b} -> {A.coimp[a][b]}" for a in r for b in r]
    return "\n".join(lines) + "\n"


def parse_algebra(text: str) -> FiniteBHA:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines or not lines[0].startswith("bha "):
        raise ValueError("expected 'bha <size>' header")
    size = int(lines[0].split()[1])
    sets = []
    for ln in lines[1 : 1 + size]:
        if not (ln.startswith("{") and ln.endswith("}")):
            raise ValueError(f"bad element line {ln!r}")
        sets.append(mask_of(int(t) for t in ln[1:-1].split()))
    A = algebra_from_lattice(sets)
    if len(A) != size:
        raise ValueError("element lines are not distinct")
    # Tables given in the file must agree with the lattice-derived ones.
    pos = {s: k for k, s in enumerate(A.universe)}
    for ln in lines[1 + size :]:
        op, a, b, arrow, k = ln.split()
        if op not in ("imp", "coimp") or arrow != "->":
            raise ValueError(f"bad table line {ln!r}")
        table = A.imp if op == "imp" else A.coimp
        ia, ib, ik = (pos[sets[int(v)]] for v in (a, b, k))
        if table[ia][ib] != ik:
            raise ValueError(f"table line {ln!r} contradicts the lattice")
    return A
