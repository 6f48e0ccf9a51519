"""One line per acceptance criterion: ``ACCEPT <n> PASS|FAIL <label> (<detail>)``.

Every criterion is exact; wall-time budgets are asserted where one is set.
"""

import time

from cotreelab.analysis import pair_leq, pi_map, run_check
from cotreelab.cotree import SINGLETON, chain, reconstruct, tau
from cotreelab.morphism import leq_p


LINES: list[str] = []


def announce(num, label, ok, detail=""):
    line = f"ACCEPT {str(num):>3} {'PASS' if ok else 'FAIL'} {label} {detail}".rstrip()
    LINES.append(line)
    print(line)


def named(num, label, check, budget=None, **params):
    r = run_check(check, params)
    ok = r.passed and (budget is None or r.wall_time < budget)
    detail = f"(instances={r.instances}, {r.wall_time:.1f}s"
    detail += f" of {budget:.0f}s budget)" if budget else ")"
    announce(num, label, ok, detail)
    assert r.passed, r.counterexamples
    if budget is not None:
        assert r.wall_time < budget


def test_01_t1_is_singleton():
    named(1, "T_1 singleton", "t1-singleton", budget=10, nodes=8)


def test_02_tau_grid():
    named(2, "tau grid", "tau-grid", budget=60, bound=4)


def test_03_structure_lemma():
    named(3, "structure lemma", "structure-lemma", nodes=8, max_n=4)


def test_04_comb_number_oracle():
    named(4, "comb-number oracle", "comb-oracle", budget=300, nodes=9)


def test_05_duality_round_trip():
    named(5, "duality round trip", "duality-roundtrip", nodes=5)


def test_06_embedding_duality():
    named(6, "embedding duality", "fin-duality", budget=600, nodes=5)


def test_07_frame_classification():
    a = run_check("prelinearity-class", {"nodes": 5})
    b = run_check("bilc-class", {"nodes": 5})
    announce(7, "frame classification", a.passed and b.passed,
             f"(prelinearity {a.instances} posets, bi-LC {b.instances} co-forests)")
    assert a.passed, a.counterexamples
    assert b.passed, b.counterexamples


def test_08_multiset_lemmas():
    named(8, "multiset lemmas", "mset-lemma", max_entry=4, omega_len=5, part_nodes=4, cotree_len=3)


def test_09_pi_order_reflection():
    named(9, "pi order reflection", "pi-reflection", nodes=7, classes=(3, 4))


def test_10_reflection_gap_five_point_pair():
    # X' built literally: a co-root over two 2-chains (five points)
    X = reconstruct(1, [SINGLETON, SINGLETON])
    X2 = reconstruct(0, [chain(2), chain(2)])
    assert X.code == tau(1, 1).code
    image = leq_p(X, X2)
    separated = not pair_leq(pi_map(X), pi_map(X2))
    ok = image is not None and separated
    announce(10, "pi not order preserving (five-point X')", ok,
             f"(leq_p={'found' if image is not None else 'none'}, pair_leq={not separated})")
    assert image is not None, "no surjective bi-p-morphism from the five-point X' onto X"
    assert separated


def test_10b_reflection_gap_seven_point_pair():
    # X' with two-leaf co-trees (seven points)
    named("10b", "pi not order preserving (seven-point X')", "counterexample")


def test_11_comb_hcomb_chain():
    named(11, "comb/hcomb chain", "comb-chain", n=5)


def test_12_ascending_chain():
    named(12, "ascending chain", "ascending-chain", n=3, t_max=3)


def test_13_morphism_laws():
    named(13, "morphism laws", "morphism-laws", nodes=5)


def test_14_antichain_table():
    named(14, "antichain table", "antichain-table", sizes=(3, 4, 5, 6, 7))


def test_15_shift_relation():
    named(15, "shift relation", "shift-relation", top=6)


def test_full_suite_budget():
    start = time.perf_counter()
    from cotreelab.analysis import CHECKS
    failed = [n for n in CHECKS if not run_check(n).passed]
    elapsed = time.perf_counter() - start
    announce("all", "verify --all", not failed and elapsed < 900, f"({elapsed:.1f}s of 900s budget)")
    assert not failed
    assert elapsed < 900
