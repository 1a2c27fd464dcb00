"""Normal forms and example foliations, degree bounds, Frobenius numbers.

Every constructor returns a validated ``Foliation``. Side conditions are
checked up front and reported with ``SideConditionError``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as igcd
from typing import Callable, Dict, List, Optional, Tuple

from .forms import ChartForm, OneForm, reduce_weights
from .foliation import Foliation, ProjPoint, is_invariant, singular_points
from .poly import QHPoly, WeightVector, gaussian_roots, gcd
from .scalars import GaussRat, I, ZERO


class SideConditionError(ValueError):
    def __init__(self, family: str, condition: str, detail: str = ""):
        self.family = family
        self.condition = condition
        msg = f"{family}: side condition violated: {condition}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


def _w(weights) -> WeightVector:
    if isinstance(weights, WeightVector):
        return weights
    if isinstance(weights, str):
        return WeightVector.parse(weights)
    return WeightVector(*weights)


def _vars(w: WeightVector):
    t = w.as_tuple()
    return [QHPoly.var(t, i) for i in range(3)]


def _form(w: WeightVector, A0, A1, A2) -> Foliation:
    return Foliation(OneForm(w, [A0, A1, A2]))


def _g(c) -> GaussRat:
    return GaussRat.coerce(c)


def _dG_form(w: WeightVector, G: QHPoly, lead: int, lead_var: int = 0) -> Foliation:
    """(deg G) G dx_v - l_v x_v dG with v = lead_var; lead is the multiplier of G."""
    x = _vars(w)
    A = [-(G.diff(i) * x[lead_var] * w[lead_var]) for i in range(3)]
    A[lead_var] = A[lead_var] + G * lead
    return _form(w, *A)


# ---------------------------------------------------------------------------
# rational fibrations
# ---------------------------------------------------------------------------


def rational_1(weights) -> Foliation:
    w = _w(weights)
    x0, x1, x2 = _vars(w)
    return _form(w, x1 * w.l1, -x0 * w.l0, QHPoly.zero(w.as_tuple()))


def rational_2(weights) -> Foliation:
    w = _w(weights)
    x0, x1, x2 = _vars(w)
    return _form(w, x2 * w.l2, QHPoly.zero(w.as_tuple()), -x0 * w.l0)


def rational_3(weights, i: int, j: int) -> Foliation:
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    if i < 1 or j < 1:
        raise SideConditionError("rational-3", "i, j >= 1")
    d = (i + 1) * l0 + l2
    if d != (j + 1) * l1 + l0:
        raise SideConditionError("rational-3", "(i+1)l0 + l2 = (j+1)l1 + l0",
                                 f"{d} != {(j + 1) * l1 + l0}")
    x0, x1, x2 = _vars(w)
    G = x2 * x0 ** i + x1 ** (j + 1)
    return _dG_form(w, G, d - l0)


def rational_4(weights) -> Foliation:
    w = _w(weights)
    x0, x1, x2 = _vars(w)
    return _form(w, QHPoly.zero(w.as_tuple()), x2 * w.l2, -x1 * w.l1)


def rational_4b(weights, j: int) -> Foliation:
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    if l0 != 1:
        raise SideConditionError("rational-4b", "l0 = 1")
    if j < 1 or j * l1 + 1 != l2:
        raise SideConditionError("rational-4b", "j l1 + 1 = l2 with j >= 1")
    x0, x1, x2 = _vars(w)
    G = x2 * x0 ** (l1 - 1) + x1 ** (j + 1)
    return _dG_form(w, G, l2 + l1 - 1)


# ---------------------------------------------------------------------------
# logarithmic forms
# ---------------------------------------------------------------------------


def log_resonances(weights) -> List[Tuple[int, int]]:
    """Pairs (i, j), i, j >= 1, with i l0 + j l1 = l2."""
    l0, l1, l2 = _w(weights).as_tuple()
    return [(i, (l2 - i * l0) // l1) for i in range(1, l2 // l0 + 1)
            if l2 - i * l0 >= l1 and (l2 - i * l0) % l1 == 0]


def log_1(weights, a, b, c, check_resonance: bool = True) -> Foliation:
    w = _w(weights)
    a, b, c = _g(a), _g(b), _g(c)
    if a * w.l0 + b * w.l1 + c * w.l2:
        raise SideConditionError("log-1", "a l0 + b l1 + c l2 = 0")
    if check_resonance:
        for i, j in log_resonances(w):
            if not (a + c * i):
                raise SideConditionError("log-1", "a + i c != 0",
                                         f"resonance i={i}, j={j}; use family log-2")
    x0, x1, x2 = _vars(w)
    return _form(w, x1 * x2 * a, x0 * x2 * b, x0 * x1 * c)


def log_2(weights, i: int, j: int) -> Foliation:
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    if i < 1 or j < 0 or i * l0 + j * l1 != l2:
        raise SideConditionError("log-2", "i l0 + j l1 = l2 with i >= 1, j >= 0")
    x0, x1, x2 = _vars(w)
    A0 = x0 ** i * x1 ** (j + 1) * l1 - x1 * x2 * i
    A1 = -(x0 ** (i + 1) * x1 ** j * l0) - x0 * x2 * j
    A2 = x0 * x1
    return _form(w, A0, A1, A2)


def log_3(weights) -> Foliation:
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    if l0 != 1:
        raise SideConditionError("log-3", "l0 = 1")
    x0, x1, x2 = _vars(w)
    A0 = x0 ** l1 * x2 * l2 - x1 * x2 * l1
    A1 = x0 * x2
    A2 = -(x0 ** (l1 + 1))
    return _form(w, A0, A1, A2)


# ---------------------------------------------------------------------------
# P(1,1,k), normal degree k+2
# ---------------------------------------------------------------------------


def _k_weights(k: int) -> WeightVector:
    if k < 1:
        raise SideConditionError("special", "k >= 1")
    return WeightVector(1, 1, k)


def special_a(k: int) -> Foliation:
    w = _k_weights(k)
    x0, x1, x2 = _vars(w)
    return _dG_form(w, x0 * x2 + x1 ** (k + 1), k + 1)


def special_b(k: int) -> Foliation:
    w = _k_weights(k)
    x0, x1, x2 = _vars(w)
    return _form(w, x0 * x2 * k - x1 * x2, x0 * x2, -(x0 ** 2))


def special_c(k: int) -> Foliation:
    w = _k_weights(k)
    x0, x1, x2 = _vars(w)
    return _form(w, x0 ** k * x1 - x1 * x2 * k, -(x0 ** (k + 1)), x0 * x1)


def special_d(k: int, i: int) -> Foliation:
    if not 0 < i < k:
        raise SideConditionError("special-d", "0 < i < k")
    return log_2(_k_weights(k), i, k - i)


def special_e(k: int, a, b, c) -> Foliation:
    a, b, c = _g(a), _g(b), _g(c)
    if a + b + c * k:
        raise SideConditionError("special-e", "a + b + c k = 0")
    return log_1(_k_weights(k), a, b, c, check_resonance=False)


# ---------------------------------------------------------------------------
# examples without algebraic separatrices
# ---------------------------------------------------------------------------


def fermat_curve(weights) -> QHPoly:
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    x0, x1, x2 = _vars(w)
    return x0 ** (l1 * l2) + x1 ** (l0 * l2) + x2 ** (l0 * l1)


def beta(weights, lam=1, mu=1, gam=-1) -> Foliation:
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    lam, mu, gam = _g(lam), _g(mu), _g(gam)
    x0, x1, x2 = _vars(w)
    G = fermat_curve(w)
    s = lam + mu + gam
    m = x0 * x1 * x2
    A0 = x1 * x2 * G * (lam * l1 * l2) - m * G.diff(0) * s
    A1 = x0 * x2 * G * (mu * l0 * l2) - m * G.diff(1) * s
    A2 = x0 * x1 * G * (gam * l0 * l1) - m * G.diff(2) * s
    return _form(w, A0, A1, A2)


def omega_p2(lam=1, mu=1, gam=-1) -> Foliation:
    """The P^2 form y0 y1 y2 L (sum c_i dy_i/y_i - (c0+c1+c2) dL/L), L = y0+y1+y2."""
    w = WeightVector(1, 1, 1)
    lam, mu, gam = _g(lam), _g(mu), _g(gam)
    y0, y1, y2 = _vars(w)
    L = y0 + y1 + y2
    s = lam + mu + gam
    m = y0 * y1 * y2
    return _form(w, y1 * y2 * L * lam - m * s, y0 * y2 * L * mu - m * s, y0 * y1 * L * gam - m * s)


def delta(k: int = 2) -> Foliation:
    if k < 2:
        raise SideConditionError("delta", "k >= 2")
    w = WeightVector(1, 1, k)
    x0, x1, x2 = _vars(w)
    A0 = -(x2 * (x2 - x0 * x1 ** (k - 1)) * k)
    A1 = x0 * x2 * (x1 ** (k - 1) - x0 * x1 ** (k - 2)) * k
    A2 = x0 * (x2 - x1 ** k)
    return _form(w, A0, A1, A2)


def eta_j1(weights, j0: int, m: Optional[int] = None) -> int:
    l0, l1, l2 = _w(weights).as_tuple()
    m = l2 if m is None else m
    for j1 in range(1, m + 1):
        if (l0 * j0 - l1 * j1) % m == 0:
            return j1
    raise SideConditionError("eta", "l0 j0 = l1 j1 mod l2 has a solution 1 <= j1 <= l2")


def eta_chart_form(weights, j0: int, a=I) -> ChartForm:
    """(y^{l2} - 1) x^{j0-1} dx - a (x^{l2} - 1) y^{j1-1} dy on the cover of chart 2."""
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    if not 1 <= j0 <= l2:
        raise SideConditionError("eta", "1 <= j0 <= l2")
    a = _g(a)
    if a.im == 0:
        raise SideConditionError("eta", "a not real")
    j1 = eta_j1(w, j0)
    cw = (l0, l1)
    x, y = QHPoly.var(cw, 0), QHPoly.var(cw, 1)
    pa = (y ** l2 - 1) * x ** (j0 - 1)
    pb = -((x ** l2 - 1) * y ** (j1 - 1) * a)
    return ChartForm(2, pa, pb, l2, eta_minimal_degree(w, j0))


def eta_minimal_degree(weights, j0: int) -> int:
    l0, l1, l2 = _w(weights).as_tuple()
    j1 = eta_j1((l0, l1, l2), j0)
    # each branch is the degree of one leading chart term plus one factor x2;
    # with l0 < l1 the branch l0 j0 + l1 l2 can win even when l1 j1 > l0 j0
    return max(l0 * j0 + l1 * l2, l1 * j1 + l0 * l2) + l2


def eta(weights, j0: int, a=I, d: Optional[int] = None) -> Foliation:
    w = _w(weights)
    cf = eta_chart_form(w, j0, a)
    omega = cf.rehomogenize(w)
    if d is not None and d != omega.degree:
        e, rem = divmod(d - omega.degree, w.l2)
        if rem or e < 0:
            raise SideConditionError("eta", "d = deg + e l2 with e >= 0",
                                     f"minimal degree {omega.degree}")
        omega = omega.mul_poly(QHPoly.var(w.as_tuple(), 2, e))
    return Foliation(omega)


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Family:
    tag: str
    builder: Callable[..., Foliation]
    params: Tuple[str, ...]
    defaults: Dict[str, object]
    needs_weights: bool = True


FAMILIES: Dict[str, Family] = {
    "rational-1": Family("rational-1", rational_1, (), {"weights": "1,2,3"}),
    "rational-2": Family("rational-2", rational_2, (), {"weights": "1,2,3"}),
    "rational-3": Family("rational-3", rational_3, ("i", "j"), {"weights": "1,2,3", "i": 1, "j": 1}),
    "rational-4": Family("rational-4", rational_4, (), {"weights": "1,2,3"}),
    "rational-4b": Family("rational-4b", rational_4b, ("j",), {"weights": "1,2,3", "j": 1}),
    "log-1": Family("log-1", log_1, ("a", "b", "c"), {"weights": "1,2,3", "a": 1, "b": 4, "c": -3}),
    "log-2": Family("log-2", log_2, ("i", "j"), {"weights": "1,2,3", "i": 1, "j": 1}),
    "log-3": Family("log-3", log_3, (), {"weights": "1,2,3"}),
    "special-a": Family("special-a", special_a, ("k",), {"k": 2}, False),
    "special-b": Family("special-b", special_b, ("k",), {"k": 2}, False),
    "special-c": Family("special-c", special_c, ("k",), {"k": 2}, False),
    "special-d": Family("special-d", special_d, ("k", "i"), {"k": 3, "i": 1}, False),
    "special-e": Family("special-e", special_e, ("k", "a", "b", "c"), {"k": 2, "a": 1, "b": 1, "c": -1}, False),
    "beta": Family("beta", beta, ("lam", "mu", "gam"), {"weights": "1,2,3", "lam": 1, "mu": 1, "gam": -1}),
    "delta": Family("delta", delta, ("k",), {"k": 2}, False),
    "eta": Family("eta", eta, ("j0", "a", "d"), {"weights": "1,1,2", "j0": 2, "a": I, "d": None}),
    "omega-P2": Family("omega-P2", omega_p2, ("lam", "mu", "gam"), {"lam": 1, "mu": 1, "gam": -1}, False),
}


@dataclass(frozen=True)
class NormalFormSpec:
    family: str
    weights: Optional[Tuple[int, int, int]] = None
    params: Dict[str, object] = field(default_factory=dict)

    def build(self) -> Foliation:
        return build(self)


def build(spec: NormalFormSpec) -> Foliation:
    fam = FAMILIES.get(spec.family)
    if fam is None:
        raise ValueError(f"unknown family {spec.family!r}; choose from {sorted(FAMILIES)}")
    kwargs = {p: spec.params.get(p, fam.defaults.get(p)) for p in fam.params}
    if fam.needs_weights:
        w = spec.weights if spec.weights is not None else fam.defaults["weights"]
        return fam.builder(_w(w), **kwargs)
    return fam.builder(**kwargs)


# ---------------------------------------------------------------------------
# arithmetic: Frobenius numbers, bounds, Bezout
# ---------------------------------------------------------------------------


def frobenius(a: int, b: int) -> int:
    if a < 1 or b < 1:
        raise ValueError("Frobenius numbers need positive integers")
    if igcd(a, b) != 1:
        raise ValueError(f"gcd({a},{b}) != 1")
    return a * b - a - b


def represent(a: int, b: int, N: int) -> Optional[Tuple[int, int]]:
    """Nonnegative (x1, x2) with a x1 + b x2 = N, smallest x2 first; None if impossible."""
    if a < 1 or b < 1:
        raise ValueError("coefficients must be positive")
    if N < 0:
        return None
    for x2 in range(N // b + 1):
        rest = N - b * x2
        if rest % a == 0:
            return rest // a, x2
    return None


def represent_positive(a: int, b: int, N: int) -> Optional[Tuple[int, int]]:
    r = represent(a, b, N - a - b)
    return None if r is None else (r[0] + 1, r[1] + 1)


@dataclass(frozen=True)
class Bounds:
    weights: Tuple[int, int, int]
    general: int
    g_invariant: int
    special: Optional[int]
    reduced: Optional[Fraction]

    def to_json(self) -> dict:
        return {"weights": list(self.weights), "general": self.general,
                "g_invariant": self.g_invariant, "special": self.special,
                "non_coprime": None if self.reduced is None else str(self.reduced)}


def jouanolou_bounds(weights) -> Bounds:
    """Degree thresholds beyond which generic foliations have no invariant curve."""
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    general = l0 * l1 * l2 + l0 * l1 + 2 * l2
    special = 2 * l2 + 1 if (l0, l1) == (1, 1) and l2 >= 2 else None
    red = reduce_weights(l0, l1, l2)
    a0, a1, a2 = red.a_i
    reduced = (Fraction(l0 * l1 * l2, a0 * a1 * a2) + Fraction(l0 * l1, a0 * a1)
               + Fraction(l0 * l2, a0 * a2) + Fraction(l1 * l2, a1 * a2))
    return Bounds((l0, l1, l2), general, general - 2, special, reduced)


def hirzebruch_generic(a: int, b: int, k: int) -> bool:
    """Bidegree range where a generic foliation on F_k has no invariant curve."""
    return b >= 3 and a >= k * b + 2


def weighted_bezout(weights, n1: int, n2: int) -> Fraction:
    w = _w(weights)
    if n1 <= 0 or n2 <= 0:
        raise ValueError("degrees must be positive")
    return Fraction(n1 * n2, w.product)


# ---------------------------------------------------------------------------
# forms independent at a point
# ---------------------------------------------------------------------------


def _pair_form(w: WeightVector, mono: Dict[int, int], i: int, j: int) -> OneForm:
    """x^mono (l_j x_j dx_i - l_i x_i dx_j)."""
    t = w.as_tuple()
    e = [0, 0, 0]
    for v, k in mono.items():
        e[v] = k
    m = QHPoly.monomial(t, e)
    A = [QHPoly.zero(t)] * 3
    A[i] = m * QHPoly.var(t, j) * w[j]
    A[j] = -(m * QHPoly.var(t, i) * w[i])
    return OneForm(w, A)


class RepresentabilityError(ArithmeticError):
    pass


def _need(r, what):
    if r is None:
        raise RepresentabilityError(f"no representation for {what}")
    return r


@dataclass(frozen=True)
class IndependencePair:
    first: OneForm
    second: OneForm
    rank: int
    names: Tuple[str, str]


def independence_forms(weights, d: int, p: ProjPoint) -> IndependencePair:
    w = _w(weights)
    l0, l1, l2 = w.as_tuple()
    if d <= l1 * l2:
        raise ValueError(f"requires d > l1 l2 = {l1 * l2}")
    if p.is_vertex():
        raise ValueError("independence forms are not defined at a vertex")
    zero = [i for i in range(3) if not p.coords[i]]
    if not zero:
        i1, j1 = _need(represent_positive(l1, l2, d), f"{d} = i l1 + j l2")
        i2, j2 = _need(represent_positive(l0, l1, d), f"{d} = i l0 + j l1")
        f1 = _pair_form(w, {1: i1 - 1, 2: j1 - 1}, 1, 2)
        f2 = _pair_form(w, {0: i2 - 1, 1: j2 - 1}, 0, 1)
        names = ("alpha", "beta")
    elif zero == [0]:
        i1, j1 = _need(represent_positive(l1, l2, d), f"{d} = i l1 + j l2")
        f1 = _pair_form(w, {1: i1 - 1, 2: j1 - 1}, 1, 2)
        r = _need(represent(l1, l2, d - l0 - l1), f"{d - l0} = i l1 + j l2")
        f2 = _pair_form(w, {1: r[0], 2: r[1]}, 0, 1)
        names = ("alpha", "delta0")
    elif zero == [1]:
        a, b = _need(represent_positive(l0, l2, d), f"{d} = a l0 + b l2")
        f1 = _pair_form(w, {0: a - 1, 2: b - 1}, 0, 2)
        r = _need(represent(l0, l2, d - l1 - l0), f"{d - l1} = i l0 + j l2")
        f2 = _pair_form(w, {0: r[0], 2: r[1]}, 0, 1)
        names = ("gamma1", "delta1")
    else:
        i2, j2 = _need(represent_positive(l0, l1, d), f"{d} = i l0 + j l1")
        f1 = _pair_form(w, {0: i2 - 1, 1: j2 - 1}, 0, 1)
        r = _need(represent(l0, l1, d - l2 - l0), f"{d - l2} = i l0 + j l1")
        f2 = _pair_form(w, {0: r[0], 1: r[1]}, 0, 2)
        names = ("gamma2", "delta2")
    from . import linalg
    rows = [list(f1.evaluate(p.coords)), list(f2.evaluate(p.coords))]
    rank = linalg.rank(rows, ZERO)
    return IndependencePair(f1, f2, rank, names)


# ---------------------------------------------------------------------------
# invariant lines on P(1,1,k)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LineSearch:
    """Invariant curves c0 x0 + c1 x1 = 0 of a foliation on P(1,1,k)."""

    x0_invariant: bool
    slopes: Tuple[GaussRat, ...]      # x1 - t x0 invariant for these t in Q(i)
    other_slopes: Tuple[Tuple[int, int], ...]  # irreducible factors of higher degree
    all_slopes: bool                  # every line through p2 is invariant

    @property
    def exists(self) -> bool:
        return self.x0_invariant or bool(self.slopes) or bool(self.other_slopes) or self.all_slopes

    def lines(self, weights) -> List[QHPoly]:
        t = _w(weights).as_tuple()
        out = [QHPoly.var(t, 0)] if self.x0_invariant else []
        out += [QHPoly.var(t, 1) - QHPoly.var(t, 0) * s for s in self.slopes]
        return out


def invariant_lines(F: Foliation) -> LineSearch:
    w = F.weights
    if (w.l0, w.l1) != (1, 1):
        raise ValueError("line search is implemented for P(1,1,k)")
    t = w.as_tuple()
    x0 = QHPoly.var(t, 0)
    A0, A1, A2 = F.omega.coeffs
    # restrict to x1 = s x0, storing s in the x1 slot
    sub = {1: x0 * QHPoly.var(t, 1)}
    s = QHPoly.var(t, 1)
    conds = [A0.substitute(sub) + s * A1.substitute(sub), A2.substitute(sub)]
    g = QHPoly.zero(t)
    for c in conds:
        # collect coefficients as polynomials in s
        buckets: Dict[Tuple[int, int], Dict[Tuple[int, int, int], GaussRat]] = {}
        for e, coeff in c.terms.items():
            buckets.setdefault((e[0], e[2]), {})[(0, e[1], 0)] = coeff
        for terms in buckets.values():
            g = gcd(g, QHPoly(t, terms))
    if not g:
        return LineSearch(bool(is_invariant(F, x0)), (), (), True)
    roots, residual = ([], []) if g.is_constant() else gaussian_roots(g, 1)
    return LineSearch(bool(is_invariant(F, x0)), tuple(r for r, _ in roots),
                      tuple(residual), False)


# ---------------------------------------------------------------------------
# recognition of the degree k+2 normal forms on P(1,1,k)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpecialClassification:
    case: Optional[str]
    singular_vertices: Tuple[int, ...]
    invariant_lines: Tuple[str, ...]
    degree_k_curve_invariant: bool
    note: str = ""

    def to_json(self) -> dict:
        return {"case": self.case, "singular_vertices": list(self.singular_vertices),
                "invariant_lines": list(self.invariant_lines),
                "x2_invariant": self.degree_k_curve_invariant, "note": self.note}


_SPECIAL_TABLE = {(1, 1): "a", (2, 1): "b", (2, 2): "c"}


def classify_special(F: Foliation) -> SpecialClassification:
    w = F.weights
    k = w.l2
    if (w.l0, w.l1) != (1, 1) or F.d != k + 2:
        raise ValueError("expects a foliation of normal degree k+2 on P(1,1,k)")
    if not F.saturated:
        raise ValueError("expects a saturated foliation")
    t = w.as_tuple()
    sing = singular_points(F)
    verts = tuple(sorted(sing.vertices()))
    lines = tuple(name for name, i in (("x0", 0), ("x1", 1)) if is_invariant(F, QHPoly.var(t, i)))
    x2_inv = bool(is_invariant(F, QHPoly.var(t, 2)))
    if not sing.complete or len(verts) != len(sing.points):
        return SpecialClassification(None, verts, lines, x2_inv, "singular points off the vertex set")
    key = (len(verts), len(lines))
    case = _SPECIAL_TABLE.get(key)
    if key == (3, 2):
        case = "e" if x2_inv else "d"
    return SpecialClassification(case, verts, lines, x2_inv,
                                 "" if case else "no matching normal form")
