from fractions import Fraction as F
from functools import lru_cache
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st
from sympy.utilities.iterables import multiset_permutations

from regen.classify import blind_condition
from regen.errors import PreconditionViolation, SearchSpaceTooLarge
from regen.formulas import (
    OperatingPoint,
    bhs_mincut,
    corollary_low_b,
    family_plus_allocation_mincut,
    family_plus_mbr_sum,
    family_plus_envelope,
    family_plus_mbr_point,
    family_plus_mincut,
    fhs_envelope,
    fhs_mbr_point,
    fhs_mincut,
    fhs_msr_point,
    prop13_mbr_value,
    rfip_mbr_sum,
    shs_lower_bound,
)
from regen.model import GroupPartition, SystemParams as P, build_family_plus_partition, build_family_structure, ceil_div, family_index_vector
from regen.perms import enumerate_y_profiles, min_profile_sum, y_vector
from regen.rational import INF


@lru_cache(maxsize=None)
def y_table(n, d):
    return tuple(y_vector(tuple(p)) for p in multiset_permutations(list(family_index_vector(n, d))))


def brute_fhs(n, k, d, alpha, beta):
    return min(sum((min((d - y[i]) * beta, alpha) for i in range(k)), F(0)) for y in y_table(n, d))


def ratio_grid(d):
    return [F(1, 2), F(1), F(3, 2), F(2), F(5, 2)] + [F(t) for t in range(3, d + 2)]


def all_params(max_n):
    return [P(n, k, d) for n in range(2, max_n + 1) for k in range(1, n) for d in range(1, n)]


# -- blind selection ---------------------------------------------------------


def test_bhs_examples():
    assert bhs_mincut(P(20, 10, 10), INF, 1) == 55
    assert bhs_mincut(P(5, 3, 2), 1, 1) == 2
    assert bhs_mincut(P(7, 4, 3), 5, 0) == 0


# -- family selection --------------------------------------------------------


@pytest.mark.parametrize("alpha,beta", [(1, 1), (2, 1), (3, 1), (1, 2), (F(3, 2), 1), (7, F(1, 3)), (INF, 1), (1, INF)])
def test_fhs_5_3_2_closed_form(alpha, beta):
    expected = 2 * min(2 * F(beta) if beta is not INF else INF, alpha)
    assert fhs_mincut(P(5, 3, 2), alpha, beta) == expected


def test_fhs_examples():
    assert fhs_mincut(P(4, 3, 2), 1, 1) == 2
    assert fhs_mincut(P(4, 3, 2), F(3, 7), F(3, 7)) == F(6, 7)
    assert fhs_mincut(P(6, 4, 4), 4, 1) == 11


def test_fhs_degenerate_inputs():
    assert fhs_mincut(P(6, 4, 4), 0, 5) == 0
    assert fhs_mincut(P(6, 4, 4), 5, 0) == 0
    assert fhs_mincut(P(6, 4, 4), INF, 1) == 11
    assert fhs_mincut(P(6, 4, 4), INF, INF) is INF


@pytest.mark.parametrize("p", all_params(7), ids=str)
def test_fhs_matches_permutation_brute_force(p):
    for rho in ratio_grid(p.d):
        for beta in (F(1), F(2, 3)):
            alpha = rho * beta
            assert fhs_mincut(p, alpha, beta) == brute_fhs(p.n, p.k, p.d, alpha, beta), (alpha, beta)


@settings(max_examples=150, deadline=None)
@given(
    st.integers(2, 11).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1), st.integers(1, n - 1))),
    st.fractions(min_value=0, max_value=12, max_denominator=7),
    st.fractions(min_value=0, max_value=4, max_denominator=7),
)
def test_fhs_matches_state_dp(nkd, alpha, beta):
    n, k, d = nkd
    direct = min_profile_sum(n, k, d, lambda y: min((d - y) * beta, alpha))
    assert fhs_mincut(P(n, k, d), alpha, beta) == direct


@pytest.mark.parametrize("p", [P(6, 4, 4), P(8, 5, 5), P(9, 6, 4), P(10, 7, 6)], ids=str)
def test_fhs_matches_profile_enumeration(p):
    profiles = enumerate_y_profiles(p.n, p.k, p.d)
    for rho in ratio_grid(p.d):
        v = min(sum(min((p.d - y) * F(1), rho) for y in prof) for prof in profiles)
        assert fhs_mincut(p, rho, 1) == v


@settings(max_examples=150, deadline=None)
@given(
    st.integers(2, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 1), st.integers(1, n - 1))),
    st.fractions(min_value=0, max_value=10, max_denominator=5),
    st.fractions(min_value=0, max_value=3, max_denominator=5),
    st.fractions(min_value=0, max_value=2, max_denominator=5),
)
def test_monotone_and_dominates_blind(nkd, alpha, beta, step):
    p = P(*nkd)
    base = fhs_mincut(p, alpha, beta)
    assert fhs_mincut(p, alpha + step, beta) >= base
    assert fhs_mincut(p, alpha, beta + step) >= base
    assert bhs_mincut(p, alpha + step, beta) >= bhs_mincut(p, alpha, beta)
    assert base >= bhs_mincut(p, alpha, beta)


@pytest.mark.parametrize("p", [q for q in all_params(8) if blind_condition(q)], ids=str)
def test_blind_conditions_leave_nothing_to_gain(p):
    for rho in ratio_grid(p.d):
        assert fhs_mincut(p, rho, 1) == bhs_mincut(p, rho, 1)


# -- stationary lower bound --------------------------------------------------


def test_shs_fhs_sets_4_3_2():
    fs = build_family_structure(4, 2)
    assert shs_lower_bound(fs, 3, 2, 1) == 4 == fhs_mincut(P(4, 3, 2), 2, 1)


def test_shs_k1():
    assert shs_lower_bound([{2, 3}, {1, 3}, {1, 2}], 1, F(5, 2), 1) == 2
    assert shs_lower_bound([{2, 3}, {1, 3}, {1, 2}], 1, 1, 1) == 1


def test_shs_degenerate_sets_regression():
    sets = [{1, 2}] * 4
    brute = min(
        sum(2 - len(sets[r[i] - 1] & set(r[:i])) for i in range(3)) for r in product(range(1, 5), repeat=3)
    )
    assert brute == 3
    assert shs_lower_bound(sets, 3, INF, 1) == 3


def test_shs_cap():
    with pytest.raises(SearchSpaceTooLarge):
        shs_lower_bound(build_family_structure(6, 3), 5, 1, 1, cap=1000)


@pytest.mark.parametrize("p", all_params(5), ids=str)
def test_shs_equals_fhs_for_family_sets(p):
    fs = build_family_structure(p.n, p.d)
    for rho in (F(1), F(2), F(p.d)):
        assert shs_lower_bound(fs, p.k, rho, 1) == fhs_mincut(p, rho, 1)


# -- operating points --------------------------------------------------------


def test_fhs_mbr_examples():
    assert rfip_mbr_sum(20, 10, 10) == 75
    assert fhs_mbr_point(P(20, 10, 10)).gamma == F(2, 15)
    pt = fhs_mbr_point(P(6, 4, 4))
    assert (pt.alpha, pt.gamma) == (F(4, 11), F(4, 11))
    pt = fhs_mbr_point(P(5, 3, 2))
    assert (pt.alpha, pt.gamma) == (F(1, 2), F(1, 2))


@pytest.mark.parametrize("p", all_params(10), ids=str)
def test_mbr_point_is_tight(p):
    pt = fhs_mbr_point(p)
    assert pt.gamma == p.d * pt.beta
    assert fhs_mincut(p, pt.alpha, pt.beta) == 1
    assert fhs_mincut(p, pt.alpha - F(1, 1000), pt.beta) < 1
    assert fhs_envelope(p.n, p.k, p.d).mbr_sum() == rfip_mbr_sum(p.n, p.k, p.d)


def test_fhs_msr_examples():
    pt = fhs_msr_point(P(10, 7, 9))
    assert (pt.alpha, pt.beta) == (F(1, 7), F(1, 21))
    pt = fhs_msr_point(P(5, 3, 2))
    assert (pt.alpha, pt.beta) == (F(1, 2), F(1, 4))
    pt = fhs_msr_point(P(6, 1, 4), M=3)
    assert (pt.alpha, pt.beta) == (F(3), F(3, 4))


@pytest.mark.parametrize("p", all_params(9), ids=str)
def test_msr_closed_form_matches_search(p):
    env = fhs_envelope(p.n, p.k, p.d)
    pt = fhs_msr_point(p)
    assert pt.alpha == F(1, env.msr_count()) == F(1, min(p.k, p.d))
    assert pt.beta == env.min_beta(pt.alpha, 1)
    assert fhs_mincut(p, pt.alpha, pt.beta) == 1


def test_operating_point_guards():
    with pytest.raises(ValueError):
        OperatingPoint(F(-1), F(1), F(1), F(1))
    assert OperatingPoint.of(1, F(1, 3), 3, 1).gamma == 1


# -- family-plus -------------------------------------------------------------


def test_family_plus_single_part_is_fhs():
    for p in all_params(7):
        gp = GroupPartition((p.n,), p.d)
        for rho in (F(1), F(2), F(p.d)):
            assert family_plus_mincut(gp, p.k, rho, 1) == fhs_mincut(p, rho, 1)


@pytest.mark.parametrize("alpha,beta", [(1, 1), (F(1, 2), 1), (3, 2), (1, 5)])
def test_family_plus_two_groups(alpha, beta):
    gp = GroupPartition((4, 4), 1)
    v = family_plus_mincut(gp, 3, alpha, beta)
    assert v == family_plus_allocation_mincut(gp, 3, alpha, beta)
    assert v >= bhs_mincut(P(8, 3, 1), alpha, beta)


def test_family_plus_60_40_10():
    gp = build_family_plus_partition(60, 10)
    assert family_plus_mincut(gp, 40, 10, 1) == 200
    assert family_plus_mbr_sum(60, 40, 10) == 200
    assert family_plus_mbr_point(60, 40, 10).gamma == F(1, 20)


def test_family_plus_9_8_2():
    # n_l = 5 and q = ((8 - 5) mod 4) - 1 = 2
    assert family_plus_mbr_sum(9, 8, 2) == 8
    gp = build_family_plus_partition(9, 2)
    assert family_plus_allocation_mincut(gp, 8, 2, 1) == 8
    assert family_plus_mbr_point(9, 8, 2).beta == F(1, 8)


def test_family_plus_small_n_is_fhs():
    for n, k, d in [(5, 3, 3), (7, 4, 2), (6, 5, 4)]:
        assert family_plus_mbr_point(n, k, d) == fhs_mbr_point(P(n, k, d))


@pytest.mark.parametrize("n", range(2, 19))
def test_family_plus_mbr_sum_matches_allocation_search(n):
    for d in range(1, n):
        gp = build_family_plus_partition(n, d)
        for k in range(1, n):
            assert family_plus_mbr_sum(n, k, d) == family_plus_envelope(gp, k).mbr_sum()


@pytest.mark.parametrize("n,d", [(8, 2), (9, 2), (12, 3), (13, 2), (10, 2)])
def test_family_plus_envelope_matches_allocations(n, d):
    gp = build_family_plus_partition(n, d)
    for k in range(1, n):
        for rho in ratio_grid(d):
            assert family_plus_mincut(gp, k, rho, 1) == family_plus_allocation_mincut(gp, k, rho, 1)


def test_family_plus_rejects_oversized_k():
    with pytest.raises(ValueError):
        family_plus_mincut(GroupPartition((4, 4), 2), 9, 1, 1)


# -- special shapes ----------------------------------------------------------


def test_corollary_examples():
    assert corollary_low_b(P(6, 4, 4), 4, 1) == 11
    assert corollary_low_b(P(4, 3, 2), 1, 1) == 2
    with pytest.raises(PreconditionViolation):
        corollary_low_b(P(6, 3, 4), 1, 1)
    with pytest.raises(PreconditionViolation):
        corollary_low_b(P(5, 3, 1), 1, 1)


@pytest.mark.parametrize(
    "p",
    [q for q in all_params(10) if q.d >= 2 and q.k == ceil_div(q.n, q.n - q.d) + 1],
    ids=str,
)
def test_corollary_matches_fhs(p):
    for rho in ratio_grid(p.d):
        assert corollary_low_b(p, rho, 1) == fhs_mincut(p, rho, 1)


def test_divisible_mbr_value_examples():
    assert prop13_mbr_value(6, 3) == 9 == fhs_mincut(P(6, 5, 3), 3, 1)
    assert prop13_mbr_value(4, 2) == 4 == fhs_mincut(P(4, 3, 2), 2, 1)
    assert prop13_mbr_value(2, 1) == 1 == fhs_mincut(P(2, 1, 1), 1, 1)
    with pytest.raises(PreconditionViolation):
        prop13_mbr_value(6, 3, k=4)
    with pytest.raises(PreconditionViolation):
        prop13_mbr_value(7, 3, k=6, d=3)
    with pytest.raises(PreconditionViolation):
        prop13_mbr_value(6, 3, k=5, d=3, beta=2)


@pytest.mark.parametrize("n", range(2, 15))
def test_family_plus_no_worse_than_fhs_at_mbr_slope(n):
    for d in range(1, n):
        gp = build_family_plus_partition(n, d)
        for k in range(1, n):
            assert family_plus_mincut(gp, k, d, 1) >= fhs_mincut(P(n, k, d), d, 1)
