from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import G, cycle, path, simple_graphs
from enumkernel.oracle import (
    GuardError,
    SolutionSetReport,
    brute_fvs,
    brute_half_integral_vc,
    brute_vc,
    compare,
    min_vc_size,
)


def test_brute_vc_examples():
    assert brute_vc(path(3), 2).count == 4
    assert brute_vc(cycle(3), 1).count == 0
    assert brute_vc(G(3), 3).count == 8


def test_brute_fvs_examples():
    assert brute_fvs(cycle(3), 1).count == 3
    assert brute_fvs(cycle(4), 2).count == 10
    rep = brute_fvs(G(2, (1, 1)), 1)
    assert rep.solutions == [(1,)]


def test_negative_budget_is_empty():
    assert brute_vc(path(2), -1).count == 0
    assert brute_fvs(cycle(3), -1).count == 0


def test_half_integral_examples():
    assert brute_half_integral_vc(path(2)) == 1
    assert brute_half_integral_vc(cycle(3)) == Fraction(3, 2)
    assert brute_half_integral_vc(G(4, (1, 2), (1, 3), (1, 4))) == 1


def test_guards():
    with pytest.raises(GuardError):
        brute_vc(G(25), 1)
    with pytest.raises(GuardError):
        brute_fvs(G(21), 1)
    with pytest.raises(GuardError):
        brute_half_integral_vc(G(17))


def test_vc_oracle_rejects_multigraphs():
    with pytest.raises(ValueError):
        brute_vc(G(2, (1, 2, 2)), 1)


def test_compare_examples():
    a = brute_vc(path(3), 2)
    assert compare(a, brute_vc(path(3), 2))
    d = compare([()], [])
    assert not d and d.witness == ()
    d = compare([(1,), (1,)], SolutionSetReport.from_sets([(1,)]))
    assert not d and d.duplicates == [(1,)]


def test_compare_falls_back_to_digest_when_lists_dropped():
    a = SolutionSetReport.from_sets([(1,), (2,), (1, 2)], cap=1)
    b = SolutionSetReport.from_sets([(2,), (1, 2), (1,)], cap=1)
    assert a.solutions is None and compare(a, b)
    c = SolutionSetReport.from_sets([(2,), (1, 2), (3,)], cap=1)
    assert not compare(a, c)


@settings(max_examples=60)
@given(simple_graphs(max_n=8))
def test_vc_count_monotone_in_k(g):
    counts = [brute_vc(g, k).count for k in range(len(g) + 1)]
    assert counts == sorted(counts)


@pytest.mark.parametrize("n", range(0, 7))
def test_fvs_forest_all_subsets(n):
    assert brute_fvs(path(n) if n else G(0), n).count == 2**n


@settings(max_examples=60)
@given(simple_graphs(max_n=8))
def test_half_integral_below_integral(g):
    assert brute_half_integral_vc(g) <= min_vc_size(g)
