import json

import pytest
from hypothesis import given, strategies as st

from cotreelab.analysis import (
    CHECKS,
    CheckReport,
    UnknownCheck,
    is_bad_fragment,
    max_antichain,
    max_antichain_bruteforce,
    pair_leq,
    pi_map,
    reflection_gap_pair,
    run_check,
    shift_rel,
    shift_rel_oracle,
)
from cotreelab.cotree import SINGLETON, chain, comb, cotrees_of_size, in_T, reconstruct, tau
from cotreelab.multiset import Multiset


def mc(*trees):
    return Multiset.of([T.code for T in trees], carrier="cotree")


def test_pi_examples():
    img = pi_map(comb(2))
    assert img.upper.code == tau(0, 1).code and img.parts == mc(chain(2), SINGLETON)
    X = reconstruct(1, [SINGLETON, SINGLETON])
    img = pi_map(X)
    assert img.upper.code == tau(1, 1).code and img.parts == mc(SINGLETON, SINGLETON)
    img = pi_map(chain(4))
    assert img.upper.code == tau(2, 0).code and img.parts == mc(SINGLETON)


def test_pair_leq_examples():
    X, X2 = reflection_gap_pair()
    assert not pair_leq(pi_map(X), pi_map(X2))
    a = pi_map(comb(3))
    assert pair_leq(a, a)
    from cotreelab.analysis import PiImage
    lo = PiImage(tau(0, 1), mc(SINGLETON, SINGLETON))
    hi = PiImage(tau(1, 1), mc(chain(2), SINGLETON))
    assert pair_leq(lo, hi)


def test_shift_examples():
    assert shift_rel({0, 2}, {2, 5})
    assert not shift_rel({0, 2}, {3})
    assert shift_rel((), ())
    # edge cases where the least element of B constrains t
    assert not shift_rel((), (0,))
    assert not shift_rel((3,), (1,))
    assert shift_rel((3,), (4, 9))


subsets = st.sets(st.integers(0, 8), max_size=5)


@given(subsets, subsets)
def test_shift_matches_oracle(s, t):
    assert shift_rel(s, t) == shift_rel_oracle(s, t)


def test_bad_fragments():
    le = lambda a, b: a <= b  # noqa: E731
    assert is_bad_fragment((3, 2, 1), le)
    assert not is_bad_fragment((1, 2), le)
    grid = lambda a, b: a[0] <= b[0] and a[1] <= b[1]  # noqa: E731
    assert is_bad_fragment(((0, 1), (1, 0)), grid)


def test_antichain_examples():
    assert len(max_antichain([tau(0, 1), tau(1, 0)])) == 2
    five = [T for T in cotrees_of_size(5) if in_T(T, 2)]
    anti = max_antichain(five)
    assert {T.code for T in anti} == {tau(m, 3 - m).code for m in range(4)}
    assert len(max_antichain([chain(i) for i in range(1, 6)])) == 1


@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), unique=True, max_size=12))
def test_antichain_matches_subset_scan(points):
    grid = lambda a, b: a[0] <= b[0] and a[1] <= b[1]  # noqa: E731
    anti = max_antichain(points, grid)
    assert is_bad_fragment(anti, lambda a, b: grid(a, b) or grid(b, a))
    assert len(anti) == max_antichain_bruteforce(points, grid)


def test_report_serialization():
    r = CheckReport("x", {"n": 2})
    r.instances = 3
    r.fail("boom")
    assert r.line() == "FAIL x [n=2] instances=3"
    d = json.loads(r.to_json())
    assert d == {"name": "x", "params": {"n": 2}, "passed": False, "instances": 3, "counterexamples": ["boom"]}
    assert "wall_time" in json.loads(r.to_json(timing=True))


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_check("no-such-check")


@pytest.mark.parametrize("name", sorted(CHECKS))
def test_named_checks_pass_small(name):
    small = {
        "t1-singleton": {"nodes": 5},
        "tau-grid": {"bound": 2},
        "structure-lemma": {"nodes": 6},
        "comb-oracle": {"nodes": 6},
        "duality-roundtrip": {"nodes": 4},
        "fin-duality": {"nodes": 4},
        "prelinearity-class": {"nodes": 4},
        "bilc-class": {"nodes": 4},
        "mset-lemma": {"max_entry": 2, "omega_len": 3, "part_nodes": 3, "cotree_len": 2},
        "pi-reflection": {"nodes": 6},
        "counterexample": {},
        "comb-chain": {"n": 3},
        "ascending-chain": {"t_max": 2},
        "antichain-table": {"sizes": (3, 4, 5)},
        "morphism-laws": {"nodes": 4},
        "shift-relation": {"top": 4},
    }
    r = run_check(name, small[name])
    assert r.passed, r.counterexamples
    assert r.instances > 0



def test_five_point_pair_has_no_image_by_full_scan():
    import itertools
    from cotreelab.morphism import PosetMap, check_bi_p_morphism

    X = reconstruct(1, [SINGLETON, SINGLETON])
    X2 = reconstruct(0, [chain(2), chain(2)])
    hits = [
        mp for mp in itertools.product(range(X.n), repeat=X2.n)
        if check_bi_p_morphism(f := PosetMap(X2.poset, X.poset, mp)) and f.is_surjective()
    ]
    assert hits == []
