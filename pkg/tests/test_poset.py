import itertools

import pytest
from hypothesis import given, strategies as st

from cotreelab.poset import (
    CycleError,
    antichain_poset,
    all_posets,
    canonical_form,
    chain_poset,
    classify,
    cone,
    disjoint_union,
    format_poset,
    isomorphic_bruteforce,
    order_embedding,
    parse_poset,
    poset_from_covers,
    upset_masks,
    all_upsets,
)
from cotreelab.cotree import chain, comb, cotree_from_code


def test_two_chain_covers():
    P = poset_from_covers(2, [(0, 1)])
    assert P.covers == ((0, 1),) or list(P.covers) == [(0, 1)]


def test_transitive_reduction():
    P = poset_from_covers(3, [(0, 1), (1, 2), (0, 2)])
    assert sorted(P.covers) == [(0, 1), (1, 2)]


def test_cycle_rejected():
    with pytest.raises(CycleError):
        poset_from_covers(2, [(0, 1), (1, 0)])


def test_bad_index():
    with pytest.raises(IndexError):
        poset_from_covers(2, [(0, 5)])


def test_cones():
    P = chain_poset(3)
    assert cone(P, 1, "up") == {1, 2}
    assert cone(P, 1, "down") == {0, 1}
    C2 = comb(2)
    assert cone(C2.poset, C2.coroot, "down") == set(range(4))


@pytest.mark.parametrize("P, expected", [
    (chain_poset(2), [set(), {1}, {0, 1}]),
    (antichain_poset(2), [set(), {0}, {1}, {0, 1}]),
    (poset_from_covers(3, [(0, 1), (0, 2)]), [set(), {1}, {2}, {1, 2}, {0, 1, 2}]),
])
def test_upsets(P, expected):
    assert sorted(map(sorted, all_upsets(P))) == sorted(map(sorted, expected))


def test_upsets_match_subset_filter():
    for n in range(1, 5):
        for P in all_posets(n):
            brute = [m for m in range(1 << n) if P.is_upset(m)]
            assert sorted(upset_masks(P)) == brute


def test_classify_examples(lam):
    assert classify(chain_poset(3)).kind == "chain"
    assert classify(lam).kind == "other"
    u = disjoint_union([chain_poset(2), chain_poset(1)])
    assert classify(u).kind == "coforest-noncotree"


def test_embedding_examples():
    assert order_embedding(comb(1).poset, comb(2).poset) is not None
    assert order_embedding(comb(2).poset, chain(9).poset) is None
    assert order_embedding(comb(3).poset, comb(2).poset) is None


def test_embedding_witness_is_embedding():
    for n in range(1, 5):
        for P in all_posets(n):
            w = order_embedding(chain_poset(2), P)
            if w is None:
                assert P.n == 1 or all(not P.lt(a, b) for a in range(n) for b in range(n))
                continue
            a, b = w.map
            assert P.lt(a, b)


def test_disjoint_union_examples():
    u = disjoint_union([chain_poset(2), chain_poset(2)])
    assert u.n == 4 and len(classify(u).components) == 2
    assert disjoint_union([chain_poset(1)]).n == 1
    assert disjoint_union([]).n == 0


def test_poset_counts():
    # unlabeled posets on 1..5 points
    assert [len(all_posets(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_text_round_trip():
    for n in range(1, 5):
        for P in all_posets(n):
            Q = parse_poset("# comment\n" + format_poset(P))
            assert Q == P


@given(st.permutations(list(range(5))))
def test_canonical_form_relabel_invariant(perm):
    P = comb(2).poset
    P5 = disjoint_union([P, chain_poset(1)])
    Q = P5.relabel(perm)
    assert canonical_form(Q) == canonical_form(P5)
    assert isomorphic_bruteforce(P5, Q)


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=10))
def test_random_dag_closure(edges):
    pairs = [(a, b) for a, b in edges if a < b]
    P = poset_from_covers(6, pairs)
    for a, b in pairs:
        assert P.leq(a, b)
    for x, y, z in itertools.product(range(6), repeat=3):
        if P.leq(x, y) and P.leq(y, z):
            assert P.leq(x, z)
    for x, y in P.covers:
        assert not any(P.lt(x, z) and P.lt(z, y) for z in range(6))
