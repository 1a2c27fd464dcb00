"""1-forms, 2-forms and vector fields on P(l0,l1,l2) and on its affine charts.

Orientation conventions:

* radial field  R = l0 x0 d/dx0 + l1 x1 d/dx1 + l2 x2 d/dx2
* i_R(dx0^dx1^dx2) = l0 x0 dx1^dx2 - l1 x1 dx0^dx2 + l2 x2 dx0^dx1
* a 1-form sum A_i dx_i of normal degree d has deg A_i = d - l_i, dx_i carrying weight l_i
* (omega ^ dF) has coefficients C_ij = A_i dF/dx_j - A_j dF/dx_i on dx_i^dx_j, i < j
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .parsing import parse_form_coefficients
from .poly import NotHomogeneous, QHPoly, WeightVector, divides, exact_div, format_poly, gcd
from .scalars import GaussRat


class InvalidForm(ValueError):
    """A coefficient triple that does not define a 1-form on P(l)."""

    def __init__(self, message: str, residual: Optional[QHPoly] = None):
        self.residual = residual
        super().__init__(message if residual is None else f"{message}: {residual}")


class DegenerateField(ValueError):
    pass


def _wv(weights) -> WeightVector:
    return weights if isinstance(weights, WeightVector) else WeightVector(*weights)


def monomials_of_degree(weights: Sequence[int], n: int) -> List[Tuple[int, ...]]:
    """Exponent tuples of weighted degree n, canonical (descending lex) order."""
    weights = tuple(weights)
    if n < 0:
        return []
    out: List[Tuple[int, ...]] = []

    def rec(i: int, rest: int, prefix: Tuple[int, ...]):
        if i == len(weights) - 1:
            if rest % weights[i] == 0:
                out.append(prefix + (rest // weights[i],))
            return
        for e in range(rest // weights[i], -1, -1):
            rec(i + 1, rest - e * weights[i], prefix + (e,))

    rec(0, n, ())
    return out


def _coef_degree(A: QHPoly) -> int:
    return A.weighted_degree()


# ---------------------------------------------------------------------------
# 1-forms
# ---------------------------------------------------------------------------


class OneForm:
    """omega = A0 dx0 + A1 dx1 + A2 dx2 with i_R omega = 0."""

    __slots__ = ("weights", "coeffs", "degree")

    def __init__(self, weights, coeffs: Sequence[QHPoly], degree: Optional[int] = None, check: bool = True):
        w = _wv(weights)
        coeffs = tuple(coeffs)
        if len(coeffs) != 3:
            raise ValueError("a 1-form needs three coefficients")
        for c in coeffs:
            if c.weights != w.as_tuple():
                raise ValueError("coefficient ring does not match the weight vector")
        if check:
            degree = self._validate(w, coeffs, degree)
        elif degree is None:
            raise ValueError("degree required when validation is skipped")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("OneForm is immutable")

    @staticmethod
    def _validate(w: WeightVector, coeffs, degree: Optional[int]) -> int:
        if not any(coeffs):
            raise InvalidForm("the zero form defines no foliation")
        found = set()
        for i, A in enumerate(coeffs):
            if A:
                try:
                    found.add(A.weighted_degree() + w[i])
                except NotHomogeneous as exc:
                    raise InvalidForm(f"coefficient of dx{i} is not quasi-homogeneous "
                                      f"(degrees {sorted(exc.degrees)})") from None
        if len(found) != 1:
            raise InvalidForm(f"inconsistent normal degrees {sorted(found)} across coefficients")
        d = found.pop()
        if degree is not None and degree != d:
            raise InvalidForm(f"declared degree {degree} but coefficients give {d}")
        residual = _contract(w, coeffs)
        if residual:
            raise InvalidForm("radial contraction is nonzero", residual)
        return d

    @classmethod
    def parse(cls, text: str, weights) -> "OneForm":
        w = _wv(weights)
        return cls(w, parse_form_coefficients(text, w.as_tuple()))

    @property
    def A0(self):
        return self.coeffs[0]

    @property
    def A1(self):
        return self.coeffs[1]

    @property
    def A2(self):
        return self.coeffs[2]

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.weights == other.weights and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.weights, self.coeffs))

    def __str__(self):
        parts = []
        for i, A in enumerate(self.coeffs):
            if A:
                parts.append(f"({A})*dx{i}")
        return " + ".join(parts)

    def __repr__(self):
        return f"OneForm({self.weights}, d={self.degree}, {self})"

    def scale(self, c) -> "OneForm":
        return OneForm(self.weights, [A.scale(c) for A in self.coeffs], self.degree, check=False)

    def __add__(self, other: "OneForm") -> "OneForm":
        if self.weights != other.weights or self.degree != other.degree:
            raise ValueError("forms live in different spaces")
        return OneForm(self.weights, [a + b for a, b in zip(self.coeffs, other.coeffs)],
                       self.degree, check=False)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def mul_poly(self, F: QHPoly) -> "OneForm":
        return OneForm(self.weights, [A * F for A in self.coeffs], self.degree + F.weighted_degree(), check=False)

    def div_poly(self, F: QHPoly) -> "OneForm":
        return OneForm(self.weights, [exact_div(A, F) if A else A for A in self.coeffs],
                       self.degree - F.weighted_degree(), check=False)

    def coefficient_gcd(self) -> QHPoly:
        g = QHPoly.zero(self.weights)
        for A in self.coeffs:
            g = gcd(g, A)
        return g

    def evaluate(self, point) -> Tuple[GaussRat, GaussRat, GaussRat]:
        return tuple(A.evaluate(point) for A in self.coeffs)

    def canonical_text(self) -> str:
        w = ",".join(str(l) for l in self.weights)
        body = ";".join(format_poly(A) for A in self.coeffs)
        return f"P({w}) d={self.degree} [{body}]"

    def hash(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()

    def to_json(self) -> dict:
        return {"weights": list(self.weights.as_tuple()), "degree": self.degree,
                "form": str(self), "coefficients": [str(A) for A in self.coeffs]}


def _contract(w: WeightVector, coeffs) -> QHPoly:
    total = QHPoly.zero(w.as_tuple())
    for i, A in enumerate(coeffs):
        if A:
            total = total + QHPoly.var(w.as_tuple(), i) * A * w[i]
    return total


def contract_radial(omega) -> QHPoly:
    """i_R omega = sum l_i x_i A_i. Accepts a OneForm or a raw (weights, coefficients) pair."""
    if isinstance(omega, OneForm):
        return _contract(omega.weights, omega.coeffs)
    weights, coeffs = omega
    return _contract(_wv(weights), coeffs)


def basis_fol(weights, d: int) -> List[OneForm]:
    """A basis of the 1-forms of normal degree d (kernel of contraction with R)."""
    w = _wv(weights)
    wt = w.as_tuple()
    if d < 1:
        raise ValueError("normal degree must be at least 1")
    slots = [(i, e) for i in range(3) for e in monomials_of_degree(wt, d - w[i])]
    if not slots:
        return []
    targets = monomials_of_degree(wt, d)
    index = {e: r for r, e in enumerate(targets)}
    rows = [[Fraction(0)] * len(slots) for _ in targets]
    for col, (i, e) in enumerate(slots):
        f = list(e)
        f[i] += 1
        rows[index[tuple(f)]][col] += w[i]
    kern = linalg.kernel(rows, len(slots), Fraction(0), Fraction(1))
    # canonical normalization: last nonzero slot (the free variable) equals 1 already
    basis = []
    for vec in kern:
        coeffs = [dict(), dict(), dict()]
        for (i, e), c in zip(slots, vec):
            if c:
                coeffs[i][e] = c
        basis.append(OneForm(w, [QHPoly(wt, c) for c in coeffs], d, check=False))
    return basis


def section_dimension(weights, n: int) -> int:
    return len(monomials_of_degree(_wv(weights).as_tuple(), n))


def euler_sequence_count(weights, d: int) -> int:
    """sum dim S_{d-l_i} - dim S_d, the naive Euler-sequence count."""
    w = _wv(weights)
    return sum(section_dimension(w, d - w[i]) for i in range(3)) - section_dimension(w, d)


# ---------------------------------------------------------------------------
# 2-forms and vector fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwoForm:
    """C01 dx0^dx1 + C02 dx0^dx2 + C12 dx1^dx2."""

    weights: WeightVector
    C01: QHPoly
    C02: QHPoly
    C12: QHPoly

    @property
    def coeffs(self) -> Tuple[QHPoly, QHPoly, QHPoly]:
        return (self.C01, self.C02, self.C12)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def degree(self) -> Optional[int]:
        """Normal degree: deg C_ij + l_i + l_j, or None for the zero form."""
        pairs = ((0, 1), (0, 2), (1, 2))
        degs = {C.weighted_degree() + self.weights[i] + self.weights[j]
                for C, (i, j) in zip(self.coeffs, pairs) if C}
        if not degs:
            return None
        if len(degs) != 1:
            raise NotHomogeneous(degs)
        return degs.pop()

    def divide(self, F: QHPoly) -> Optional["TwoForm"]:
        out = []
        for C in self.coeffs:
            ok, h = divides(F, C)
            if not ok:
                return None
            out.append(h)
        return TwoForm(self.weights, *out)

    def __str__(self):
        names = ("dx0^dx1", "dx0^dx2", "dx1^dx2")
        parts = [f"({C})*{n}" for C, n in zip(self.coeffs, names) if C]
        return " + ".join(parts) if parts else "0"


def wedge_dF(omega: OneForm, F: QHPoly) -> TwoForm:
    A = omega.coeffs
    dF = [F.diff(i) for i in range(3)]

    def c(i, j):
        return A[i] * dF[j] - A[j] * dF[i]

    return TwoForm(omega.weights, c(0, 1), c(0, 2), c(1, 2))


class VectorField:
    """X = B0 d/dx0 + B1 d/dx1 + B2 d/dx2 with deg B_i = d - |l| + l_i."""

    __slots__ = ("weights", "coeffs", "degree")

    def __init__(self, weights, coeffs: Sequence[QHPoly], degree: Optional[int] = None):
        w = _wv(weights)
        coeffs = tuple(coeffs)
        found = set()
        for i, B in enumerate(coeffs):
            if B:
                found.add(B.weighted_degree() + w.total - w[i])
        if degree is None:
            if len(found) != 1:
                raise InvalidForm(f"vector field coefficients give degrees {sorted(found)}")
            degree = found.pop()
        elif found - {degree}:
            raise InvalidForm(f"vector field coefficients do not match degree {degree}")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("VectorField is immutable")

    @classmethod
    def radial(cls, weights, d: Optional[int] = None) -> "VectorField":
        w = _wv(weights)
        wt = w.as_tuple()
        return cls(w, [QHPoly.var(wt, i) * w[i] for i in range(3)], d if d is not None else w.total)


def field_to_form(X: VectorField) -> OneForm:
    """omega = i_X i_R (dx0^dx1^dx2)."""
    w = X.weights
    wt = w.as_tuple()
    B = X.coeffs
    r = [QHPoly.var(wt, i) * w[i] for i in range(3)]
    A0 = r[1] * B[2] - r[2] * B[1]
    A1 = r[2] * B[0] - r[0] * B[2]
    A2 = r[0] * B[1] - r[1] * B[0]
    if not (A0 or A1 or A2):
        raise DegenerateField("vector field is a multiple of the radial field")
    return OneForm(w, [A0, A1, A2], X.degree, check=False)


# ---------------------------------------------------------------------------
# pullbacks
# ---------------------------------------------------------------------------


def pullback_power(omega: OneForm, exponents: Sequence[int], target_weights) -> OneForm:
    """Pull back along x_i -> x_i^{e_i}, so dx_i -> e_i x_i^{e_i-1} dx_i."""
    tw = _wv(target_weights)
    t = tw.as_tuple()
    images = {i: QHPoly.var(t, i, exponents[i]) for i in range(3)}
    coeffs = []
    for i, A in enumerate(omega.coeffs):
        Ai = A.substitute(images, target_weights=t)
        coeffs.append(Ai * QHPoly.var(t, i, exponents[i] - 1) * exponents[i])
    return OneForm(tw, coeffs)


def pullback_phi(omega: OneForm) -> OneForm:
    """Pull back to P^2 along (x0^l0, x1^l1, x2^l2)."""
    return pullback_power(omega, omega.weights.as_tuple(), (1, 1, 1))


def is_G_invariant(omega: OneForm, group_orders: Sequence[int]) -> bool:
    """Monomials of A_i have x_i exponent = l_i - 1 and x_j exponent = 0 modulo l_i, l_j."""
    for i, A in enumerate(omega.coeffs):
        for e in A.terms:
            for j in range(3):
                want = group_orders[j] - 1 if j == i else 0
                if e[j] % group_orders[j] != want % group_orders[j]:
                    return False
    return True


# ---------------------------------------------------------------------------
# charts
# ---------------------------------------------------------------------------


def chart_axes(i: int) -> Tuple[int, int]:
    return tuple(j for j in range(3) if j != i)


@dataclass(frozen=True)
class ChartForm:
    """a(x,y) dx + b(x,y) dy on the mu_{l_i}-cover of the chart x_i != 0."""

    chart: int
    a: QHPoly
    b: QHPoly
    order: int
    degree: int

    @property
    def cover_weights(self) -> Tuple[int, int]:
        return self.a.weights

    def term_degrees(self) -> List[int]:
        wj, wk = self.cover_weights
        degs = {wj * e[0] + wk * e[1] + wj for e in self.a.terms}
        degs |= {wj * e[0] + wk * e[1] + wk for e in self.b.terms}
        return sorted(degs)

    @property
    def r(self) -> int:
        degs = self.term_degrees()
        if not degs:
            raise ValueError("chart form vanishes identically")
        return degs[0]

    def is_group_invariant(self) -> bool:
        return all((s - self.degree) % self.order == 0 for s in self.term_degrees())

    def part(self, s: int) -> Tuple[QHPoly, QHPoly]:
        """The quasi-homogeneous slice of degree s (dx, dy coefficients)."""
        wj, wk = self.cover_weights
        a = QHPoly(self.cover_weights, {e: c for e, c in self.a.terms.items() if wj * e[0] + wk * e[1] + wj == s})
        b = QHPoly(self.cover_weights, {e: c for e, c in self.b.terms.items() if wj * e[0] + wk * e[1] + wk == s})
        return a, b

    def initial(self) -> Tuple[QHPoly, QHPoly]:
        return self.part(self.r)

    def vector_field(self) -> Tuple[QHPoly, QHPoly]:
        """Dual field v = b d/dx - a d/dy, returned as (v_x, v_y)."""
        return self.b, -self.a

    def rehomogenize(self, weights) -> OneForm:
        w = _wv(weights)
        wt = w.as_tuple()
        i = self.chart
        j, k = chart_axes(i)
        out = [QHPoly.zero(wt)] * 3
        for slot, poly, extra in ((j, self.a, w[j]), (k, self.b, w[k])):
            terms = {}
            for (alpha, beta), c in poly.terms.items():
                s = w[j] * alpha + w[k] * beta + extra
                gamma, rem = divmod(self.degree - s, w[i])
                if rem or gamma < 0:
                    raise InvalidForm("chart form is not compatible with the stated degree")
                e = [0, 0, 0]
                e[i], e[j], e[k] = gamma, alpha, beta
                terms[tuple(e)] = c
            out[slot] = QHPoly(wt, terms)
        rest = -(QHPoly.var(wt, j) * out[j] * w[j] + QHPoly.var(wt, k) * out[k] * w[k])
        out[i] = exact_div(rest, QHPoly.var(wt, i) * w[i]) if rest else rest
        return OneForm(w, out, self.degree)

    def __str__(self):
        parts = []
        if self.a:
            parts.append(f"({self.a})*dx")
        if self.b:
            parts.append(f"({self.b})*dy")
        return " + ".join(parts) if parts else "0"


def dehomogenize(F: QHPoly, i: int) -> QHPoly:
    """Set x_i = 1; the result lives on the cover with weights (l_j, l_k)."""
    j, k = chart_axes(i)
    cw = (F.weights[j], F.weights[k])
    terms = {}
    for e, c in F.terms.items():
        key = (e[j], e[k])
        terms[key] = terms[key] + c if key in terms else c
    return QHPoly(cw, terms)


def chart_restrict(omega: OneForm, i: int) -> ChartForm:
    j, k = chart_axes(i)
    a = dehomogenize(omega.coeffs[j], i)
    b = dehomogenize(omega.coeffs[k], i)
    if not a and not b:
        raise InvalidForm(f"form vanishes identically on chart {i}")
    cf = ChartForm(i, a, b, omega.weights[i], omega.degree)
    if not cf.is_group_invariant():
        raise InvalidForm("chart form is not invariant under the cyclic group")
    return cf


# ---------------------------------------------------------------------------
# weighted blow-up at the vertex of P(1,1,k)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlowupForm:
    """P(X,Y) dX + Q(X,Y) dY on a chart of the weighted blow-up, saturated by monomials."""

    chart: str
    P: QHPoly
    Q: QHPoly
    removed_exponents: Tuple[Fraction, int]
    k: int

    @property
    def e(self) -> int:
        """Order of the exceptional divisor in the pulled-back form."""
        e = self.k * self.removed_exponents[0]
        if e.denominator != 1:
            raise ArithmeticError("non-integral exceptional order")
        return int(e)

    def exceptional_invariant(self) -> bool:
        """E = {X=0} (V0) or {Y=0} (V1) is invariant iff the coefficient of the transverse differential vanishes on it."""
        idx = 0 if self.chart == "V0" else 1
        transverse = self.Q if self.chart == "V0" else self.P
        return all(e[idx] > 0 for e in transverse.terms)

    def __str__(self):
        parts = []
        if self.P:
            parts.append(f"({format_poly(self.P, ('X', 'Y'))})*dX")
        if self.Q:
            parts.append(f"({format_poly(self.Q, ('X', 'Y'))})*dY")
        return " + ".join(parts)


def blowup_pullback(cf: ChartForm, chart: str = "V0") -> BlowupForm:
    """Pull the cover form back along (X^{1/k}, X^{1/k} Y) (V0) or (X Y^{1/k}, Y^{1/k}) (V1)."""
    if cf.cover_weights != (1, 1):
        raise ValueError("blow-up charts are defined for the vertex of P(1,1,k)")
    if chart not in ("V0", "V1"):
        raise ValueError("chart must be V0 or V1")
    k = cf.order
    inv = Fraction(1, k)
    P: Dict[Tuple[Fraction, int], GaussRat] = {}
    Q: Dict[Tuple[Fraction, int], GaussRat] = {}

    def acc(target, key, c):
        v = target.get(key)
        target[key] = c if v is None else v + c

    # work in V0 coordinates; V1 is obtained by swapping x and y
    a, b = (cf.a, cf.b) if chart == "V0" else (cf.b, cf.a)
    for (al, be), c in a.terms.items():
        if chart == "V1":
            al, be = be, al
        # x^al y^be dx, x = X^{1/k}, y = X^{1/k} Y  ->  X^{(al+be)/k} Y^be * (1/k) X^{1/k-1} dX
        acc(P, (Fraction(al + be + 1, k) - 1, be), c * inv)
    for (al, be), c in b.terms.items():
        if chart == "V1":
            al, be = be, al
        # x^al y^be dy with dy = (1/k) X^{1/k-1} Y dX + X^{1/k} dY
        acc(P, (Fraction(al + be + 1, k) - 1, be + 1), c * inv)
        acc(Q, (Fraction(al + be + 1, k), be), c)
    P = {e: c for e, c in P.items() if c}
    Q = {e: c for e, c in Q.items() if c}
    if not P and not Q:
        raise ArithmeticError("pullback vanishes identically")
    mx = min(e[0] for e in list(P) + list(Q))
    my = min(e[1] for e in list(P) + list(Q))

    def finish(terms):
        out = {}
        for (ex, ey), c in terms.items():
            ex = ex - mx
            if ex.denominator != 1:
                raise ArithmeticError("non-integral exponent after pullback: input is not group invariant")
            out[(int(ex), ey - my)] = c
        return out

    Pi, Qi = finish(P), finish(Q)
    if chart == "V1":
        # swap back: coordinates (X, Y) -> (Y, X) and dX <-> dY
        Pi, Qi = ({(e[1], e[0]): c for e, c in Qi.items()}, {(e[1], e[0]): c for e, c in Pi.items()})
    return BlowupForm(chart, QHPoly((1, 1), Pi), QHPoly((1, 1), Qi), (mx, my), k)


# ---------------------------------------------------------------------------
# weight reduction
# ---------------------------------------------------------------------------


def _lcm(a: int, b: int) -> int:
    return a * b // igcd(a, b)


@dataclass(frozen=True)
class WeightReduction:
    original: Tuple[int, int, int]
    reduced: WeightVector
    d: Tuple[int, int, int]
    a_i: Tuple[int, int, int]
    a: int

    def to_json(self) -> dict:
        return {"original": list(self.original), "reduced": list(self.reduced.as_tuple()),
                "d": list(self.d), "a_i": list(self.a_i), "a": self.a}


def reduce_weights(l0: int, l1: int, l2: int) -> WeightReduction:
    l = (l0, l1, l2)
    d = (igcd(l1, l2), igcd(l0, l2), igcd(l0, l1))
    ai = (_lcm(d[1], d[2]), _lcm(d[0], d[2]), _lcm(d[0], d[1]))
    a = _lcm(_lcm(ai[0], ai[1]), ai[2])
    reduced = WeightVector(*(li // ci for li, ci in zip(l, ai)))
    return WeightReduction(l, reduced, d, ai, a)
