from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from wpfol.parsing import parse_polynomial
from wpfol.poly import (NotHomogeneous, QHPoly, WeightMismatch, WeightVector, divides, exact_div, format_poly, gcd,
                        gaussian_roots, resultant)
from wpfol.scalars import I, GaussRat

from oracle import from_sympy, sympy_resultant, to_sympy
from strategies import WEIGHTS, gaussrats, nonzero_gaussrats, qh_polys, sparse_polys


def P(text, w=(1, 1, 1)):
    return parse_polynomial(text, w)


# -- scalars -----------------------------------------------------------------

@given(gaussrats, gaussrats, gaussrats)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == 0


@given(nonzero_gaussrats)
def test_inverse(a):
    assert a * a.inverse() == 1
    assert (a / a) == GaussRat(1)


def test_i_squared_and_mixed_arithmetic():
    assert I * I == -1
    assert 2 * I + Fraction(1, 2) == GaussRat(Fraction(1, 2), 2)
    assert GaussRat(3) == 3
    assert hash(GaussRat(3)) == hash(3)


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        GaussRat(0).inverse()


def test_json_roundtrip():
    z = GaussRat(Fraction(-2, 3), Fraction(5, 7))
    assert GaussRat.from_json(z.to_json()) == z


# -- weight vectors ------------------------------------------------------------

def test_weight_vector_flags():
    w = WeightVector.parse("1,1,3")
    assert w.total == 5 and w.is_p2k() and w.is_pairwise_coprime()
    assert not WeightVector.parse("2,2,3").is_pairwise_coprime()


# -- ring operations -----------------------------------------------------------

def test_monomial_product_degree():
    w = (2, 3, 5)
    p = QHPoly.var(w, 0) * QHPoly.var(w, 1)
    assert p == QHPoly.monomial(w, (1, 1, 0)) and p.weighted_degree() == 5


def test_additive_inverse_is_empty():
    p = P("x0^2 + 3*x1*x2")
    assert not (p + (-p)).terms


@pytest.mark.parametrize("w", [(1, 2, 3), (2, 3, 5), (1, 1, 4), (3, 4, 5)])
def test_fermat_type_sum_is_homogeneous(w):
    l0, l1, l2 = w
    p = QHPoly.var(w, 0, l1 * l2) + QHPoly.var(w, 1, l0 * l2) + QHPoly.var(w, 2, l0 * l1)
    assert p.weighted_degree() == l0 * l1 * l2
    assert p.evaluate([1, 1, 1]) == 3


def test_weight_mismatch():
    with pytest.raises(WeightMismatch):
        QHPoly.var((1, 1, 1), 0) + QHPoly.var((1, 1, 2), 0)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_weighted_degree_examples(k):
    w = (1, 1, k)
    assert QHPoly.var(w, 2).weighted_degree() == k
    assert P(f"x0*x2 + x1^{k + 1}", w).weighted_degree() == k + 1


def test_not_homogeneous_carries_degrees():
    with pytest.raises(NotHomogeneous) as err:
        P("x0 + x2", (1, 1, 2)).weighted_degree()
    assert err.value.degrees == frozenset({1, 2})


def test_zero_has_no_degree():
    with pytest.raises(ValueError):
        QHPoly.zero((1, 1, 1)).weighted_degree()


@pytest.mark.parametrize("w", WEIGHTS)
@given(data=st.data())
def test_degree_additive(w, data):
    m = data.draw(st.integers(1, 8))
    n = data.draw(st.integers(1, 8))
    p = data.draw(qh_polys(w, m))
    q = data.draw(qh_polys(w, n))
    assume(p and q)
    assert (p * q).weighted_degree() == m + n


@pytest.mark.parametrize("w", WEIGHTS)
@given(data=st.data())
def test_euler_relation(w, data):
    n = data.draw(st.integers(1, 12))
    p = data.draw(qh_polys(w, n))
    lhs = sum((QHPoly.var(w, i).scale(w[i]) * p.diff(i) for i in range(3)), QHPoly.zero(w))
    assert lhs == p.scale(n)


# -- gcd / divisibility ----------------------------------------------------------

def test_gcd_examples():
    assert gcd(P("x0*x1"), P("x0*x2")) == P("x0")
    assert gcd(P("x0^2 + x1"), QHPoly.const((1, 1, 1), 1)) == QHPoly.const((1, 1, 1), 1)
    assert gcd(QHPoly.zero((1, 1, 1)), P("3*x1 + 6*x2")) == P("x1 + 2*x2")


def test_gcd_recovers_planted_factor():
    F = P("x0 + x1")
    coeffs = [F * P("x1"), F * P("-x0"), QHPoly.zero((1, 1, 1))]
    g = gcd(gcd(coeffs[0], coeffs[1]), coeffs[2])
    ok, h = divides(F, g)
    assert ok and h.is_constant()


def _check_gcd(f, g):
    d = gcd(f, g)
    assert divides(d, f)[0] and divides(d, g)[0]
    assert gcd(exact_div(f, d), exact_div(g, d)).is_constant()
    return d


@given(sparse_polys(max_exp=2, max_terms=3), sparse_polys(max_exp=2, max_terms=3),
       sparse_polys(max_exp=2, max_terms=3))
def test_gcd_planted_factor(a, b, c):
    d = _check_gcd(a * c, b * c)
    assert divides(c, d)[0]
    assert d.leading()[1] == 1


@pytest.mark.parametrize("w", WEIGHTS[:4])
@given(data=st.data())
def test_gcd_quasi_homogeneous(w, data):
    a = data.draw(qh_polys(w, data.draw(st.integers(1, 4)), max_terms=4))
    b = data.draw(qh_polys(w, data.draw(st.integers(1, 4)), max_terms=4))
    c = data.draw(qh_polys(w, data.draw(st.integers(1, 4)), max_terms=3))
    assume(a and b and c)
    d = _check_gcd(a * c, b * c)
    assert divides(c, d)[0]
    d.weighted_degree()


def test_divides_examples():
    assert divides(P("x0"), P("x0*x1")) == (True, P("x1"))
    assert divides(P("x0 - x1"), P("x0^2 - x1^2")) == (True, P("x0 + x1"))
    ok, _ = divides(P("x0 - x1"), P("x0^2 + x1^2"))
    assert not ok


@pytest.mark.parametrize("l2,j1", [(2, 1), (3, 2), (5, 3)])
def test_divides_chart_polynomial(l2, j1):
    w = (1, 1, 1)
    p = P(f"i*(x0^{l2} - 1)*x1^{j1 - 1}", w)
    ok, h = divides(P("x0 - 1", w), p)
    assert ok and P("x0 - 1", w) * h == p


def test_divides_by_zero():
    with pytest.raises(ZeroDivisionError):
        divides(QHPoly.zero((1, 1, 1)), P("x0"))


@given(sparse_polys(max_terms=8), sparse_polys(max_terms=8))
def test_divides_product(f, h):
    ok, q = divides(f, f * h)
    assert ok and q == h


# -- resultant ---------------------------------------------------------------

def test_resultant_linear():
    w = (1, 1)
    x = QHPoly.var(w, 0)
    a, b = GaussRat(3, 1), GaussRat(-2)
    assert resultant(x - a, x - b, 0) == QHPoly.const(w, a - b)


def test_resultant_sign_convention():
    w = (1, 1)
    x, y = QHPoly.var(w, 0), QHPoly.var(w, 1)
    assert resultant(y - x * x, y - x, 1) == x * x - x


@given(sparse_polys((1, 1), max_exp=3, max_terms=4), sparse_polys((1, 1), max_exp=2, max_terms=3))
def test_resultant_matches_sympy(p, q):
    assume(p.degree_in(1) > 0 and q.degree_in(1) > 0)
    assert resultant(p, q, 1) == from_sympy(sympy_resultant(p, q, 1), (1, 1))


@given(sparse_polys((1, 1), max_exp=2, max_terms=3), sparse_polys((1, 1), max_exp=2, max_terms=3),
       sparse_polys((1, 1), max_exp=2, max_terms=3))
def test_resultant_zero_iff_common_factor(a, b, c):
    assume(a.degree_in(1) > 0 or b.degree_in(1) > 0)
    common = gcd(a, b)
    r = resultant(a, b, 1)
    assert (not r) == (common.degree_in(1) > 0)
    assume(c.degree_in(1) > 0)
    assert not resultant(a * c, b * c, 1)


def test_resultant_locates_chart_singularities():
    # a = b = 0 has solutions (0,0), (0,1), (0,-1), (2,0) after eliminating y
    w = (1, 1)
    x, y = QHPoly.var(w, 0), QHPoly.var(w, 1)
    a = x * (y - 1) * (y + 1)
    b = y * (x - 2)
    roots, residual = gaussian_roots(resultant(a, b, 1), 0)
    assert sorted(str(z) for z, _ in roots) == ["0", "2"] and not residual


# -- substitution ------------------------------------------------------------

def test_substitute_chart_and_evaluate():
    w = (1, 2, 3)
    G = P("x0^6 + x1^3 + x2^2", w)
    chart = G.substitute({2: 1}, target_weights=None)
    assert chart.evaluate([1, 1, 1]) == 3 and G.evaluate([1, 1, 1]) == 3


@pytest.mark.parametrize("w,text", [
    ((1, 2, 3), "x0^6 + x0^2*x1^2 + x1^3 + x0^3*x2 + x2^2"),
    ((2, 3, 5), "x0^5 + x0^2*x1^2 + x0*x1*x2 + x2^2"),
])
def test_phi_substitution_is_ordinary_homogeneous(w, text):
    p = P(text, w)
    n = p.weighted_degree()
    one = (1, 1, 1)
    phi = {i: QHPoly.var(one, i, w[i]) for i in range(3)}
    assert p.substitute(phi, target_weights=one).weighted_degree() == n


# -- text ------------------------------------------------------------------------

@pytest.mark.parametrize("w", WEIGHTS)
@given(data=st.data())
def test_format_parse_roundtrip(w, data):
    p = data.draw(qh_polys(w, data.draw(st.integers(1, 9))))
    assert parse_polynomial(format_poly(p), w) == p


def test_canonical_text():
    p = P("x1*x0 + 2*x0^2 - (1/2+3*i)*x2", (1, 1, 2))
    assert format_poly(p) == format_poly(P(format_poly(p), (1, 1, 2)))
    assert to_sympy(p) == to_sympy(P(format_poly(p), (1, 1, 2)))


# -- roots in Q(i) ----------------------------------------------------------------

def _sympy_factor_data(p):
    import sympy as sp
    t = sp.Symbol("t")
    expr = to_sympy(p).subs(sp.Symbol("x"), t)
    fl = sp.Poly(expr, t, domain=sp.QQ_I).factor_list()[1]
    roots = []
    for f, m in fl:
        if f.degree() == 1:
            z = sp.expand(-f.all_coeffs()[1] / f.all_coeffs()[0])
            re, im = sp.Rational(sp.re(z)), sp.Rational(sp.im(z))
            roots.append((GaussRat(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q))), m))
    residual_count = sum(f.degree() * m for f, m in fl if f.degree() > 1)
    return sorted(roots, key=lambda zm: (zm[0].re, zm[0].im)), residual_count


@given(st.lists(st.tuples(gaussrats, st.integers(1, 2)), max_size=3),
       st.lists(st.sampled_from(["x^2 + 2", "x^4 + 1", "x^2 - i", "x^3 - x - 1", "x^2 + x + 1"]), max_size=2))
def test_gaussian_roots_against_sympy(linear, quadratic):
    w = (1, 1)
    x = QHPoly.var(w, 0)
    p = QHPoly.const(w, 3)
    for z, m in linear:
        p = p * (x - z) ** m
    for q in quadratic:
        p = p * parse_polynomial(q, w)
    assume(not p.is_constant())
    roots, residual = gaussian_roots(p, 0)
    expected_roots, expected_residual = _sympy_factor_data(p)
    merged = {}
    for z, m in expected_roots:
        merged[z] = merged.get(z, 0) + m
    assert roots == sorted(merged.items(), key=lambda zm: (zm[0].re, zm[0].im))
    assert sum(d * m for d, m in residual) == expected_residual


def test_gaussian_roots_conjugate_split():
    # x^4 + 1 = (x^2 - i)(x^2 + i) splits over Q(i) into two quadratics
    roots, residual = gaussian_roots(parse_polynomial("x^4 + 1", (1, 1)), 0)
    assert roots == [] and residual == [(2, 1), (2, 1)]
    roots, residual = gaussian_roots(parse_polynomial("x^2 + 1", (1, 1)), 0)
    assert [str(z) for z, _ in roots] == ["-1*i", "1*i"] and residual == []
