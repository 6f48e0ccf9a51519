"""Finite experiments: the structure map, shifts, antichains and the named checks."""

from __future__ import annotations

import inspect
import itertools
import json
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .cotree import (
    SINGLETON_CODE,
    CoTree,
    chain,
    comb,
    comb_number,
    comb_number_bruteforce,
    cotree_from_code,
    cotrees_of_size,
    decompose,
    enumerate_cotrees,
    hcomb,
    in_T,
    reconstruct,
    tau,
)
from .duality import algebra_embedding, dual_algebra, is_valid, prime_filter_poset
from .formula import BILC, PRELINEARITY
from .matching import konig_cover, max_matching
from .morphism import enumerate_bi_p_morphisms, leq_p, leq_p_codes
from .multiset import (
    Multiset,
    Order,
    cotree_order,
    embeddable,
    omega_order,
    projects,
    projects_bruteforce,
)
from .poset import Poset, all_posets, bits, canonical_form, classify, format_poset


# -- the structure map -------------------------------------------------------

@dataclass(frozen=True)
class PiImage:
    upper: CoTree
    parts: Multiset

    def describe(self) -> str:
        return f"({self.upper.code}, {self.parts})"


def pi_map(T: CoTree) -> PiImage:
    d = decompose(T)
    return PiImage(tau(d.m, d.k), d.parts)


_shared_order: Order | None = None


def _cotree_ord() -> Order:
    global _shared_order
    if _shared_order is None:
        _shared_order = cotree_order()
    return _shared_order


def pair_leq(a: PiImage, b: PiImage, ord: Order | None = None) -> bool:
    """Product order: upper parts by ``<=p``, part multisets by projectivity."""
    if not leq_p_codes(a.upper.code, b.upper.code):
        return False
    return projects(a.parts, b.parts, ord or _cotree_ord()) is not None


# -- shifts and bad sequences -------------------------------------------------

FiniteSubset = tuple[int, ...]


def is_prefix(s: Sequence[int], t: Sequence[int]) -> bool:
    """``s`` is an initial segment of the increasing sequence ``t``."""
    return len(s) <= len(t) and tuple(t[: len(s)]) == tuple(s)


def shift_rel(s: Iterable[int], t: Iterable[int]) -> bool:
    """Whether some infinite ``B`` starts with ``s`` while ``B`` minus its least element starts with ``t``."""
    s, t = tuple(sorted(s)), tuple(sorted(t))
    if not s:
        # B's least element must sit strictly below all of t
        return not t or t[0] > 0
    rest = s[1:]
    if is_prefix(t, rest):
        return True
    return is_prefix(rest, t) and t[0] > s[0]


def shift_rel_oracle(s: Iterable[int], t: Iterable[int]) -> bool:
    """Scan finite prefixes of ``B`` inside ``{0..max(s∪t)+|s|+|t|+1}``."""
    s, t = tuple(sorted(s)), tuple(sorted(t))
    bound = max(s + t, default=0) + len(s) + len(t) + 1
    length = max(len(s), len(t) + 1)
    floor = s[-1] + 1 if s else 0
    for tail in itertools.combinations(range(floor, bound + 1), length - len(s)):
        prefix = s + tail
        if is_prefix(s, prefix) and is_prefix(t, prefix[1:]):
            return True
    return False


def is_bad_fragment(seq: Sequence[Any], leq: Callable[[Any, Any], bool]) -> bool:
    return all(not leq(seq[i], seq[j]) for i, j in itertools.combinations(range(len(seq)), 2))


# -- antichains ---------------------------------------------------------------

def _leq_matrix(items: Sequence[Any], leq: Callable[[Any, Any], bool]) -> list[list[bool]]:
    return [[leq(a, b) for b in items] for a in items]


def max_antichain(items: Sequence[Any], leq: Callable[[Any, Any], bool] | None = None) -> list:
    """Maximum antichain through a minimum chain cover (matching on strict comparabilities)."""
    if leq is None:
        leq = lambda a, b: leq_p_codes(a.code, b.code)  # noqa: E731
    n = len(items)
    rel = _leq_matrix(items, leq)
    adj = [[j for j in range(n) if j != i and rel[i][j]] for i in range(n)]
    match = max_matching(n, n, adj)
    left, right = konig_cover(n, n, adj, match)
    return [items[i] for i in range(n) if i not in left and i not in right]


def max_antichain_bruteforce(items: Sequence[Any], leq: Callable[[Any, Any], bool]) -> int:
    n = len(items)
    if n > 15:
        raise ValueError("subset scan limited to 15 items")
    rel = _leq_matrix(items, leq)
    for size in range(n, 0, -1):
        for sub in itertools.combinations(range(n), size):
            if all(not rel[a][b] and not rel[b][a] for a, b in itertools.combinations(sub, 2)):
                return size
    return 0


# -- named checks ----------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    params: dict
    passed: bool = True
    instances: int = 0
    counterexamples: list[str] = field(default_factory=list)
    wall_time: float = 0.0

    def fail(self, text: str):
        self.passed = False
        if len(self.counterexamples) < 10:
            self.counterexamples.append(text)

    def line(self, timing: bool = False) -> str:
        params = ",".join(f"{k}={v}" for k, v in self.params.items())
        out = f"{'PASS' if self.passed else 'FAIL'} {self.name} [{params}] instances={self.instances}"
        if timing:
            out += f" time={self.wall_time:.2f}s"
        return out

    def to_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("wall_time")
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)


def _cx(*trees: CoTree) -> str:
    return " | ".join(format_poset(T.poset).strip().replace("\n", "; ") for T in trees)


def check_t1_singleton(r: CheckReport, nodes: int = 8):
    found = list(enumerate_cotrees(nodes, lambda T: in_T(T, 1)))
    r.instances = sum(1 for _ in enumerate_cotrees(nodes))
    if [T.code for T in found] != [SINGLETON_CODE]:
        r.fail("T_1 members: " + ", ".join(T.code for T in found))


def check_tau_grid(r: CheckReport, bound: int = 4):
    rng = range(bound + 1)
    for m, k, m2, k2 in itertools.product(rng, rng, rng, rng):
        r.instances += 1
        got = leq_p(tau(m, k), tau(m2, k2)) is not None
        if got != (m <= m2 and k <= k2):
            r.fail(f"tau({m},{k}) <=p tau({m2},{k2}) is {got}")
    for m, k in itertools.product(rng, rng):
        r.instances += 1
        if leq_p(chain(1), tau(m, k)) is None:
            r.fail(f"singleton not below tau({m},{k})")


def check_structure_lemma(r: CheckReport, nodes: int = 8, max_n: int = 4):
    seen: dict[tuple, str] = {}
    for T in enumerate_cotrees(nodes):
        if T.n < 2:
            continue
        parts = [cotree_from_code(c) for c in decompose(T).parts.universe()]
        img = pi_map(T)
        key = (img.upper.code, img.parts)
        if key in seen:
            r.fail(f"pi not injective: {seen[key]} and {T.code}")
        seen[key] = T.code
        cn = comb_number(T)
        if not in_T(img.upper, 2) or not all(in_T(Y, cn) for Y in parts):
            r.fail(f"pi image outside T_2 x T_{cn}: {T.code}")
        for n in range(1, max_n + 1):
            r.instances += 1
            if in_T(T, n + 1) != all(in_T(Y, n) for Y in parts):
                r.fail(f"n={n}: {T.code}")


def check_comb_oracle(r: CheckReport, nodes: int = 9):
    for T in enumerate_cotrees(nodes):
        r.instances += 1
        a, b = comb_number(T), comb_number_bruteforce(T)
        if a != b:
            r.fail(f"{T.code}: recursion {a}, embedding search {b}")


def check_duality_roundtrip(r: CheckReport, nodes: int = 5):
    for n in range(1, nodes + 1):
        for X in all_posets(n):
            r.instances += 1
            back = prime_filter_poset(dual_algebra(X))
            if canonical_form(back) != canonical_form(X):
                r.fail(format_poset(X).strip().replace("\n", "; "))


def check_fin_duality(r: CheckReport, nodes: int = 5):
    trees = list(enumerate_cotrees(nodes))
    duals = {T.code: dual_algebra(T.poset) for T in trees}
    for X, Y in itertools.product(trees, trees):
        r.instances += 1
        alg = algebra_embedding(duals[X.code], duals[Y.code]) is not None
        frm = leq_p(X, Y) is not None
        if alg != frm:
            r.fail(f"embed={alg} leq_p={frm}: {_cx(X, Y)}")


def check_prelinearity_class(r: CheckReport, nodes: int = 5):
    for n in range(1, nodes + 1):
        for X in all_posets(n):
            r.instances += 1
            if is_valid(X, PRELINEARITY).valid != classify(X).is_coforest:
                r.fail(format_poset(X).strip().replace("\n", "; "))


def check_bilc_class(r: CheckReport, nodes: int = 5):
    for n in range(1, nodes + 1):
        for X in all_posets(n):
            cls = classify(X)
            if not cls.is_coforest:
                continue
            r.instances += 1
            chains = all(X.is_chain(sum(1 << x for x in c)) for c in cls.components)
            if is_valid(X, BILC).valid != chains:
                r.fail(format_poset(X).strip().replace("\n", "; "))


def _all_multisets(universe: Sequence[Any], max_len: int, carrier: str) -> list[Multiset]:
    out = []
    for length in range(max_len + 1):
        for combo in itertools.combinations_with_replacement(universe, length):
            out.append(Multiset.of(combo, carrier=carrier))
    return out


def _mset_space(r: CheckReport, msets: list[Multiset], ord: Order, label: str):
    rel = {}
    for N, M in itertools.product(msets, msets):
        r.instances += 1
        fast = projects(N, M, ord)
        slow = projects_bruteforce(N, M, ord)
        emb = embeddable(N, M, ord) is not None
        dominated = all(any(ord.leq(q, p) for q in N.occurrences()) for p in M.occurrences())
        if (fast is None) != (slow is None):
            r.fail(f"{label}: projects disagrees with scan on {N} << {M}")
        if (slow is not None) != (emb and dominated):
            r.fail(f"{label}: characterization fails on {N} << {M}")
        if fast is not None and not all(ord.leq(q, p) for p, q in fast.items()):
            r.fail(f"{label}: bad witness for {N} << {M}")
        rel[N, M] = slow is not None
    for (N, M), ok in rel.items():
        if ok and rel[M, N] and N != M:
            r.fail(f"{label}: antisymmetry fails for {N}, {M}")


def check_mset_lemma(r: CheckReport, max_entry: int = 4, omega_len: int = 5,
                     part_nodes: int = 4, cotree_len: int = 3):
    _mset_space(r, _all_multisets(range(max_entry + 1), omega_len, "omega"), omega_order(), "omega")
    codes = [T.code for T in enumerate_cotrees(part_nodes)]
    _mset_space(r, _all_multisets(codes, cotree_len, "cotree"), _cotree_ord(), "cotree")


def check_pi_reflection(r: CheckReport, nodes: int = 7, classes: tuple[int, ...] = (3, 4)):
    for n in classes:
        trees = [T for T in enumerate_cotrees(nodes, lambda T: in_T(T, n)) if T.n >= 2]
        images = {T.code: pi_map(T) for T in trees}
        for X, X2 in itertools.product(trees, trees):
            r.instances += 1
            if pair_leq(images[X.code], images[X2.code]) and not leq_p_codes(X.code, X2.code):
                r.fail(f"T_{n}: {_cx(X, X2)}")


def reflection_gap_pair() -> tuple[CoTree, CoTree]:
    """X <=p X' although the decompositions are not ordered (four and seven points)."""
    X = reconstruct(1, [SINGLETON_CODE, SINGLETON_CODE])
    X2 = reconstruct(0, [tau(0, 1), tau(0, 1)])
    return X, X2


def check_counterexample(r: CheckReport):
    X, X2 = reflection_gap_pair()
    r.instances = 1
    if leq_p(X, X2) is None:
        r.fail(f"expected X <=p X': {_cx(X, X2)}")
    if pair_leq(pi_map(X), pi_map(X2)):
        r.fail(f"expected pi(X) not below pi(X'): {_cx(X, X2)}")


def comb_hcomb_sequence(n: int) -> list[CoTree]:
    seq = [hcomb(0)]
    for i in range(1, n + 1):
        seq += [comb(i), hcomb(i)]
    return seq


def check_comb_chain(r: CheckReport, n: int = 5):
    seq = comb_hcomb_sequence(n)
    for (i, a), (j, b) in itertools.product(enumerate(seq), enumerate(seq)):
        r.instances += 1
        got = leq_p(a, b) is not None
        if got != (i <= j):
            r.fail(f"position {i} <=p position {j} is {got}: {_cx(a, b)}")


def ascending_chain(n: int = 3, t_max: int = 3) -> list[CoTree]:
    Y = comb(n - 2) if n > 2 else chain(1)
    return [reconstruct(2 + t, [Y, Y]) for t in range(t_max + 1)]


def check_ascending_chain(r: CheckReport, n: int = 3, t_max: int = 3):
    xs = ascending_chain(n, t_max)
    for t, X in enumerate(xs):
        if not (in_T(X, n) and not in_T(X, n - 1)):
            r.fail(f"X_{t} not in T_{n} minus T_{n-1}")
    for (t, a), (s, b) in itertools.product(enumerate(xs), enumerate(xs)):
        r.instances += 1
        got = leq_p(a, b) is not None
        if got != (t <= s):
            r.fail(f"X_{t} <=p X_{s} is {got}")


def check_antichain_table(r: CheckReport, sizes: tuple[int, ...] = (3, 4, 5, 6, 7)):
    for N in sizes:
        r.instances += 1
        items = [T for T in cotrees_of_size(N) if in_T(T, 2)]
        leq = lambda a, b: leq_p_codes(a.code, b.code)  # noqa: E731
        anti = max_antichain(items, leq)
        if any(leq(a, b) for a, b in itertools.permutations(anti, 2)):
            r.fail(f"N={N}: output is not an antichain")
        if len(anti) != N - 1:
            r.fail(f"N={N}: antichain size {len(anti)}, expected {N - 1}")
        if len(items) <= 15 and max_antichain_bruteforce(items, leq) != len(anti):
            r.fail(f"N={N}: subset scan disagrees")


def morphism_law_violations(f, src: CoTree, tgt: CoTree) -> list[str]:
    X, Y = src.poset, tgt.poset
    out = []
    for x in range(X.n):
        if f.image(X.up[x]) != Y.up[f(x)]:
            out.append(f"f[up {x}] != up f({x})")
        if f.image(X.down[x]) != Y.down[f(x)]:
            out.append(f"f[down {x}] != down f({x})")
    if any(f(x) not in Y.maximal() for x in X.maximal()):
        out.append("maximal not sent to maximal")
    if any(f(x) not in Y.minimal() for x in X.minimal()):
        out.append("minimal not sent to minimal")
    if f(src.coroot) != tgt.coroot:
        out.append("co-root not sent to co-root")
    if not f.is_surjective():
        out.append("not surjective")
    for x, z in X.covers:
        if f(x) != f(z) and (f(x), f(z)) not in Y.covers:
            out.append(f"cover {x}<{z} not sent to a cover or equality")
    return out


def check_morphism_laws(r: CheckReport, nodes: int = 5):
    trees = list(enumerate_cotrees(nodes))
    for A, B in itertools.product(trees, trees):
        for f in enumerate_bi_p_morphisms(A.poset, B.poset):
            r.instances += 1
            bad = morphism_law_violations(f, A, B)
            if bad:
                r.fail(f"{bad[0]} for {f.map}: {_cx(A, B)}")


def check_shift_relation(r: CheckReport, top: int = 6):
    subsets = [
        c for k in range(top + 2) for c in itertools.combinations(range(top + 1), k)
    ]
    for s, t in itertools.product(subsets, subsets):
        r.instances += 1
        if shift_rel(s, t) != shift_rel_oracle(s, t):
            r.fail(f"s={list(s)} t={list(t)}")


CHECKS: dict[str, Callable[..., None]] = {
    "t1-singleton": check_t1_singleton,
    "tau-grid": check_tau_grid,
    "structure-lemma": check_structure_lemma,
    "comb-oracle": check_comb_oracle,
    "duality-roundtrip": check_duality_roundtrip,
    "fin-duality": check_fin_duality,
    "prelinearity-class": check_prelinearity_class,
    "bilc-class": check_bilc_class,
    "mset-lemma": check_mset_lemma,
    "pi-reflection": check_pi_reflection,
    "counterexample": check_counterexample,
    "comb-chain": check_comb_chain,
    "ascending-chain": check_ascending_chain,
    "antichain-table": check_antichain_table,
    "morphism-laws": check_morphism_laws,
    "shift-relation": check_shift_relation,
}


class UnknownCheck(KeyError):
    pass


def run_check(name: str, params: dict | None = None) -> CheckReport:
    if name not in CHECKS:
        raise UnknownCheck(name)
    fn = CHECKS[name]
    defaults = {
        k: v.default for k, v in inspect.signature(fn).parameters.items()
        if v.default is not inspect.Parameter.empty
    }
    unknown = set(params or {}) - set(defaults)
    if unknown:
        raise TypeError(f"{name} takes no parameter(s) {sorted(unknown)}")
    params = {**defaults, **(params or {})}
    report = CheckReport(name, params)
    start = time.perf_counter()
    fn(report, **params)
    report.wall_time = time.perf_counter() - start
    return report
