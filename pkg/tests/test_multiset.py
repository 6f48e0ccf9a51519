import itertools

import pytest
from hypothesis import given, strategies as st

from cotreelab.cotree import SINGLETON, comb
from cotreelab.multiset import (
    CarrierMismatch,
    Multiset,
    SizeError,
    cotree_order,
    embeddable,
    is_injective,
    is_surjective,
    omega_order,
    projects,
    projects_bruteforce,
)

W = omega_order()
ms = lambda *xs: Multiset.of(xs, carrier="omega")  # noqa: E731


def embeddable_bruteforce(N, M, ord):
    ns, mset = N.occurrences(), M.occurrences()
    return any(
        all(ord.leq(q, mset[j]) for q, j in zip(ns, perm))
        for perm in itertools.permutations(range(len(mset)), len(ns))
    )


def test_embeddable_examples():
    w = embeddable(ms(2, 5, 2), ms(6, 3, 3, 1), W)
    assert w is not None and is_injective(w)
    assert all(q <= p for q, p in w.items())
    assert embeddable(ms(2, 5, 2), ms(6, 3, 1), W) is None
    w = embeddable(ms(), ms(4, 4), W)
    assert w is not None and w.pairs == ()


def test_projects_examples():
    w = projects(ms(1, 1), ms(2, 3), W)
    assert w is not None and sorted(w.items()) == [(2, 1), (3, 1)]
    assert projects(ms(2), ms(1, 3), W) is None
    assert projects(ms(), ms(), W) is not None
    assert projects(ms(), ms(1), W) is None
    assert projects(ms(1), ms(2, 3), W) is not None
    assert projects(ms(1, 2), ms(2), W) is None


def test_cotree_carrier():
    N = Multiset.of([SINGLETON.code], carrier="cotree")
    M = Multiset.of([comb(1).code], carrier="cotree")
    assert projects(N, M, cotree_order()) is not None


def test_carrier_mismatch():
    with pytest.raises(CarrierMismatch):
        projects(ms(1), Multiset.of(["()"], carrier="cotree"), W)


def test_scan_bound():
    with pytest.raises(SizeError):
        projects_bruteforce(ms(1), ms(*range(9)), W)


def test_multiset_basics():
    M = ms(3, 1, 3)
    assert len(M) == 3 and M.multiplicity(3) == 2 and M.universe() == [1, 3]
    assert str(M) == "[1,3,3]"
    assert M == ms(3, 3, 1)


small = st.lists(st.integers(0, 4), max_size=5).map(lambda xs: ms(*xs))


@given(small, small)
def test_embeddable_matches_permutation_scan(N, M):
    assert (embeddable(N, M, W) is not None) == embeddable_bruteforce(N, M, W)


@given(small, small)
def test_projects_witness_is_surjective_and_lowering(N, M):
    w = projects(N, M, W)
    assert (w is None) == (projects_bruteforce(N, M, W) is None)
    if w is not None:
        assert is_surjective(w)
        assert all(q <= p for p, q in w.items())


@given(small, small, small)
def test_projects_transitive(A, B, C):
    if projects(A, B, W) and projects(B, C, W):
        assert projects(A, C, W) is not None


@given(small)
def test_projects_reflexive(A):
    assert projects(A, A, W) is not None
