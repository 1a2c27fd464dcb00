from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from samples import saturated_members
from wpfol.catalog import (FAMILIES, NormalFormSpec, SideConditionError, beta, build, classify_special, delta,
                           eta, eta_minimal_degree, frobenius, independence_forms, invariant_lines,
                           jouanolou_bounds, log_1, log_2, log_3, log_resonances, rational_1, rational_2,
                           rational_3, rational_4, rational_4b, represent, represent_positive, special_a,
                           special_b, special_c, special_d, special_e, weighted_bezout)
from wpfol.foliation import ProjPoint, is_invariant, singular_points
from wpfol.forms import contract_radial
from wpfol.parsing import parse_polynomial
from wpfol.scalars import GaussRat


def P(text, w):
    return parse_polynomial(text, w)


# -- builders -------------------------------------------------------------------

@pytest.mark.parametrize("tag", sorted(FAMILIES))
def test_every_family_builds_a_valid_form(tag):
    F = build(NormalFormSpec(tag))
    assert not contract_radial(F.omega)
    for i, c in enumerate(F.omega.coeffs):
        assert not c or c.weighted_degree() == F.d - F.weights[i]


def test_unknown_family():
    with pytest.raises(ValueError):
        build(NormalFormSpec("nope"))


@pytest.mark.parametrize("w", [(1, 2, 3), (2, 3, 5), (1, 1, 4)])
def test_rational_degrees(w):
    l0, l1, l2 = w
    assert rational_1(w).d == l0 + l1
    assert rational_2(w).d == l0 + l2
    assert rational_4(w).d == l1 + l2


def test_rational_3_side_condition():
    F = rational_3((1, 2, 3), 1, 1)
    assert F.d == 5 and F.saturated
    with pytest.raises(SideConditionError):
        rational_3((1, 2, 3), 2, 1)
    with pytest.raises(SideConditionError):
        rational_3((1, 2, 3), 0, 1)


def test_rational_4b_side_condition():
    assert rational_4b((1, 2, 3), 1).d == 5
    assert rational_4b((1, 2, 5), 2).d == 7
    with pytest.raises(SideConditionError):
        rational_4b((1, 2, 5), 1)
    with pytest.raises(SideConditionError):
        rational_4b((2, 3, 7), 2)


def test_log_side_conditions():
    assert log_1((1, 2, 3), 1, 4, -3).d == 6
    with pytest.raises(SideConditionError):
        log_1((1, 2, 3), 1, 1, 1)
    # a + i c = 0 for the resonance (1, 1) of (1, 2, 3) dispatches to log-2
    assert log_resonances((1, 2, 3)) == [(1, 1)]
    with pytest.raises(SideConditionError, match="log-2"):
        log_1((1, 2, 3), 1, 1, -1)
    assert log_2((1, 2, 3), 1, 1).d == 6
    with pytest.raises(SideConditionError):
        log_2((1, 2, 3), 1, 2)
    with pytest.raises(SideConditionError):
        log_3((2, 3, 5))


def test_special_side_conditions():
    for k in (2, 3, 4):
        for F in (special_a(k), special_b(k), special_c(k), special_e(k, 1, 1, Fraction(-2, k))):
            assert F.d == k + 2 and F.saturated
    with pytest.raises(SideConditionError):
        special_d(3, 3)
    with pytest.raises(SideConditionError):
        special_e(2, 1, 1, 1)


def test_delta_and_beta_degrees():
    D = delta(2)
    assert D.d == 5 and D.saturated
    sing = singular_points(D)
    for pt in [(0, 1, 0), (1, 0, 0), (1, 1, 1)]:
        assert ProjPoint(pt, (1, 1, 2)) in sing
    B = beta((1, 2, 3), 1, 1, -1)
    assert B.d == 12
    with pytest.raises(SideConditionError):
        delta(1)


def test_eta_degrees():
    assert eta_minimal_degree((1, 1, 2), 2) == 6
    assert eta((1, 1, 2), 2).d == 6
    assert eta((1, 1, 2), 2, d=8).d == 8
    with pytest.raises(SideConditionError):
        eta((1, 1, 2), 2, d=7)
    with pytest.raises(SideConditionError):
        eta((1, 1, 2), 2, a=3)
    with pytest.raises(SideConditionError):
        eta((1, 1, 2), 3)


@pytest.mark.parametrize("w", [(1, 1, 2), (1, 1, 3), (1, 2, 3), (2, 3, 5), (1, 3, 4)])
def test_eta_minimal_degree_case_split(w):
    l0, l1, l2 = w
    for j0 in range(1, l2 + 1):
        try:
            F = eta(w, j0)
        except SideConditionError:
            continue
        assert F.d == eta_minimal_degree(w, j0)


# -- named invariant curves -----------------------------------------------------

INVARIANTS = [
    (lambda: rational_1((1, 2, 3)), ["x0", "x1", "x1 - 5*x0^2"], ["x2", "x2 - x0^3"]),
    (lambda: rational_2((1, 2, 3)), ["x0", "x2", "x2 - 7*x0^3"], ["x1", "x1 + x0^2"]),
    (lambda: rational_3((1, 2, 3), 1, 1), ["x0", "x2*x0 + x1^2"], ["x1", "x2"]),
    (lambda: rational_4((2, 3, 5)), ["x1", "x2", "x2^3 - 2*x1^5"], ["x0", "x0^3 - x1^2"]),
    (lambda: rational_4b((1, 2, 3), 1), ["x0", "x2*x0 + x1^2"], ["x1", "x2"]),
    (lambda: log_1((1, 2, 3), 1, 4, -3), ["x0", "x1", "x2"], ["x1 - x0^2", "x2 + x0*x1"]),
    (lambda: log_2((1, 2, 3), 1, 1), ["x0", "x1"], ["x2", "x1 + x0^2"]),
    (lambda: log_3((1, 2, 3)), ["x0", "x2"], ["x1", "x2 + x0^3"]),
    (lambda: special_a(2), ["x0", "x0*x2 + x1^3"], ["x1", "x2"]),
    (lambda: special_a(5), ["x0", "x0*x2 + x1^6"], ["x1", "x2"]),
    (lambda: special_b(3), ["x0", "x2"], ["x1"]),
    (lambda: special_c(4), ["x0", "x1"], ["x2"]),
    (lambda: special_d(3, 1), ["x0", "x1"], ["x2", "x0 + x1"]),
    (lambda: special_e(2, 1, 1, -1), ["x0", "x1", "x2", "x0*x1*x2"], ["x0 + x1", "x2 - x0^2"]),
    (lambda: special_e(5, 2, 3, -1), ["x0", "x1", "x2"], ["x0 - x1"]),
]


@pytest.mark.parametrize("make, invariant, controls", INVARIANTS)
def test_named_invariant_curves(make, invariant, controls):
    F = make()
    w = F.weights.as_tuple()
    for c in invariant:
        res = is_invariant(F, P(c, w))
        assert res, c
        assert res.cofactor_degree == F.d
    for c in controls:
        assert not is_invariant(F, P(c, w)), c


# -- Frobenius and representability --------------------------------------------

def brute_frobenius(a, b):
    reach = {x * a + y * b for x in range(b + 1) for y in range(a + 1)}
    bound = a * b
    missing = [n for n in range(bound) if n not in reach]
    return max(missing) if missing else -1


def test_frobenius_examples():
    assert frobenius(3, 5) == 7
    assert frobenius(1, 7) == -1
    assert represent(3, 5, 8) == (1, 1)
    assert represent(3, 5, 7) is None
    assert all(represent(1, 7, n) is not None for n in range(30))
    with pytest.raises(ValueError):
        frobenius(4, 6)


@pytest.mark.parametrize("a", range(1, 21))
def test_frobenius_brute_force(a):
    for b in range(1, 21):
        if gcd(a, b) == 1:
            assert frobenius(a, b) == brute_frobenius(a, b)


@given(st.integers(1, 15), st.integers(1, 15), st.integers(-3, 200))
def test_represent_is_a_solution(a, b, N):
    r = represent(a, b, N)
    exists = any((N - b * y) % a == 0 for y in range(max(N, -1) // b + 1)) if N >= 0 else False
    assert (r is not None) == exists
    if r is not None:
        x, y = r
        assert x >= 0 and y >= 0 and a * x + b * y == N
        assert all((N - b * yy) % a for yy in range(y))
    if gcd(a, b) == 1 and N > frobenius(a, b):
        assert r is not None


@given(st.integers(1, 9), st.integers(1, 9), st.integers(0, 100))
def test_represent_positive(a, b, N):
    r = represent_positive(a, b, N)
    if r is not None:
        assert r[0] >= 1 and r[1] >= 1 and a * r[0] + b * r[1] == N


# -- bounds and Bezout ----------------------------------------------------------

@pytest.mark.parametrize("k", range(1, 8))
def test_bounds_on_p11k(k):
    b = jouanolou_bounds((1, 1, k))
    assert b.general == 3 * k + 1
    assert b.g_invariant == 3 * k - 1
    if k >= 2:
        assert b.special == 2 * k + 1 < b.general
    assert b.reduced == 3 * k + 1


def test_classical_and_other_bounds():
    assert jouanolou_bounds((1, 1, 1)).general == 4
    assert jouanolou_bounds((1, 1, 1)).special is None
    assert jouanolou_bounds((2, 3, 5)).general == 46
    assert jouanolou_bounds((1, 2, 3)).general == 6 + 2 + 6


def test_non_coprime_bound():
    # (2, 4, 3) has a = (2, 2, 1) and reduced weights (1, 2, 3)
    assert jouanolou_bounds((2, 4, 3)).reduced == 6 + 2 + 3 + 6
    assert jouanolou_bounds((1, 2, 3)).reduced == 6 + 2 + 3 + 6


def test_weighted_bezout():
    assert weighted_bezout((1, 1, 5), 1, 5) == 1
    assert weighted_bezout((1, 1, 1), 1, 1) == 1
    assert weighted_bezout((1, 2, 3), 6, 6) == 6
    with pytest.raises(ValueError):
        weighted_bezout((1, 1, 1), 0, 2)


# -- independence forms ---------------------------------------------------------

ORBITS = [(1, 1, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0)]


def test_independence_small():
    assert independence_forms((1, 1, 2), 3, ProjPoint((1, 1, 1), (1, 1, 2))).rank == 2


@pytest.mark.parametrize("w, d", [((1, 2, 3), 7), ((1, 2, 3), 11), ((2, 3, 5), 16), ((1, 1, 3), 4),
                                  ((1, 3, 4), 13), ((2, 3, 5), 31)])
def test_independence_rank_two_at_orbits(w, d):
    for pt in ORBITS:
        pair = independence_forms(w, d, ProjPoint(pt, w))
        assert pair.rank == 2
        assert pair.first.degree == d and pair.second.degree == d


def test_independence_preconditions():
    with pytest.raises(ValueError):
        independence_forms((1, 2, 3), 6, ProjPoint((1, 1, 1), (1, 2, 3)))
    with pytest.raises(ValueError):
        independence_forms((1, 2, 3), 7, ProjPoint((0, 0, 1), (1, 2, 3)))


# -- special classification -----------------------------------------------------

@pytest.mark.parametrize("k", [2, 3, 4])
def test_classify_special(k):
    a = classify_special(special_a(k))
    assert a.case == "a" and len(a.singular_vertices) == 1 and a.invariant_lines == ("x0",)
    assert classify_special(special_b(k)).case == "b"
    assert classify_special(special_c(k)).case == "c"
    d = classify_special(special_d(k, 1))
    assert d.case == "d" and len(d.singular_vertices) == 3 and d.invariant_lines == ("x0", "x1")
    e = classify_special(special_e(k, 1, 1, Fraction(-2, k)))
    assert e.case == "e" and e.degree_k_curve_invariant


def test_classify_special_e_curves():
    e = classify_special(special_e(2, 1, 1, -1))
    assert e.case == "e" and e.invariant_lines == ("x0", "x1") and e.degree_k_curve_invariant


def test_classify_rejects_wrong_degree():
    with pytest.raises(ValueError):
        classify_special(delta(2))
    with pytest.raises(ValueError):
        classify_special(log_1((1, 2, 3), 1, 4, -3))


# -- invariant lines ------------------------------------------------------------

def test_lines_of_special_d():
    search = invariant_lines(special_d(3, 1))
    assert search.exists and search.x0_invariant
    assert GaussRat(0) in search.slopes


def test_lines_through_p2_of_pencil():
    assert invariant_lines(rational_1((1, 1, 2))).all_slopes
    assert not invariant_lines(rational_2((1, 1, 2))).all_slopes


@pytest.mark.parametrize("k", [2, 3])
def test_lines_found_for_low_degree(k):
    for d in range(k + 1, 2 * k + 1):
        for F in saturated_members((1, 1, k), d, 8, seed=31 * k + d):
            search = invariant_lines(F)
            assert search.exists
            for line in search.lines(F.weights):
                assert is_invariant(F, line)


def test_line_search_needs_p11k():
    with pytest.raises(ValueError):
        invariant_lines(log_1((1, 2, 3), 1, 4, -3))
