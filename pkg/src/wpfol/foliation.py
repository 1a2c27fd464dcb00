"""Foliations on P(l0,l1,l2): saturation, invariant curves, singular points, multiplicities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from typing import List, Optional, Sequence, Tuple

from .forms import BlowupForm, OneForm, TwoForm, blowup_pullback, chart_axes, chart_restrict, wedge_dF
from .poly import QHPoly, WeightVector, gaussian_roots, gcd, order_at, resultant
from .scalars import GaussRat, ONE, ZERO


class NotZeroDimensional(ValueError):
    """The chart coefficients share a nonconstant factor."""

    def __init__(self, chart: int, factor: QHPoly):
        self.chart = chart
        self.factor = factor
        super().__init__(f"singular set on chart {chart} contains the curve {factor} = 0")


class ShearExhausted(ArithmeticError):
    pass


class Foliation:
    """A foliation given by a 1-form; ``d`` is the normal degree."""

    __slots__ = ("omega", "_saturated")

    def __init__(self, omega: OneForm):
        if omega.is_zero():
            raise ValueError("the zero form defines no foliation")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "_saturated", None)

    def __setattr__(self, name, value):
        raise AttributeError("Foliation is immutable")

    @classmethod
    def parse(cls, text: str, weights) -> "Foliation":
        return cls(OneForm.parse(text, weights))

    @property
    def weights(self) -> WeightVector:
        return self.omega.weights

    @property
    def d(self) -> int:
        return self.omega.degree

    @property
    def canonical_degree(self) -> int:
        return self.d - self.weights.total

    @property
    def saturated(self) -> bool:
        if self._saturated is None:
            object.__setattr__(self, "_saturated", self.omega.coefficient_gcd().is_constant())
        return self._saturated

    def hash(self) -> str:
        return self.omega.hash()

    def __str__(self):
        return str(self.omega)

    def __repr__(self):
        return f"Foliation(P{self.weights.as_tuple()}, d={self.d}, {self.omega})"

    def __eq__(self, other):
        return isinstance(other, Foliation) and self.omega == other.omega

    def __hash__(self):
        return hash(self.omega)


def saturate(F: Foliation) -> Tuple[Foliation, QHPoly]:
    g = F.omega.coefficient_gcd()
    if g.is_constant():
        return F, QHPoly.const(F.weights.as_tuple(), 1)
    return Foliation(F.omega.div_poly(g)), g


# ---------------------------------------------------------------------------
# invariant curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvarianceResult:
    invariant: bool
    cofactor: Optional[TwoForm]

    def __bool__(self):
        return self.invariant

    @property
    def cofactor_degree(self) -> Optional[int]:
        return None if self.cofactor is None else self.cofactor.degree


def is_invariant(F: Foliation, C: QHPoly) -> InvarianceResult:
    """C = 0 is invariant iff C divides every coefficient of omega ^ dC."""
    if not C:
        raise ValueError("the zero polynomial defines no curve")
    C.weighted_degree()
    theta = wedge_dF(F.omega, C).divide(C)
    return InvarianceResult(theta is not None, theta)


# ---------------------------------------------------------------------------
# points of P(l)
# ---------------------------------------------------------------------------


def _kernel_basis(ls: Sequence[int]) -> List[List[int]]:
    """Z-basis of {e : sum e_i l_i = 0} via unimodular column reduction."""
    n = len(ls)
    row = list(ls)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    # reduce row to (g, 0, ..., 0) by Euclid on columns
    while sum(1 for v in row if v) > 1 or (row and row[0] == 0 and any(row)):
        nz = [i for i in range(n) if row[i]]
        p = min(nz, key=lambda i: abs(row[i]))
        for i in nz:
            if i != p:
                q = row[i] // row[p]
                row[i] -= q * row[p]
                for r in range(n):
                    U[r][i] -= q * U[r][p]
        if sum(1 for v in row if v) == 1:
            p = next(i for i in range(n) if row[i])
            if p != 0:
                row[0], row[p] = row[p], row[0]
                for r in range(n):
                    U[r][0], U[r][p] = U[r][p], U[r][0]
            break
    return [[U[r][c] for r in range(n)] for c in range(1, n)]


class ProjPoint:
    """A point [x0:x1:x2] of P(l); equality is equality of orbits."""

    __slots__ = ("coords", "weights")

    def __init__(self, coords: Sequence, weights):
        coords = tuple(GaussRat.coerce(c) for c in coords)
        if len(coords) != 3 or not any(coords):
            raise ValueError("a point needs three coordinates, not all zero")
        w = weights if isinstance(weights, WeightVector) else WeightVector(*weights)
        object.__setattr__(self, "coords", self._normalize(coords, w))
        object.__setattr__(self, "weights", w)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @staticmethod
    def _normalize(coords, w):
        i = next(j for j in range(3) if coords[j])
        if w[i] != 1:
            return coords
        t = coords[i].inverse()
        return tuple(c * t ** w[j] for j, c in enumerate(coords))

    def support(self) -> Tuple[int, ...]:
        return tuple(i for i in range(3) if self.coords[i])

    def is_vertex(self) -> bool:
        return len(self.support()) == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.weights != other.weights or self.support() != other.support():
            return False
        S = self.support()
        ls = [self.weights[i] for i in S]
        p = [self.coords[i] for i in S]
        q = [other.coords[i] for i in S]
        for e in _kernel_basis(ls):
            lhs = rhs = ONE
            for pi, qi, k in zip(p, q, e):
                if k > 0:
                    lhs, rhs = lhs * pi ** k, rhs * qi ** k
                elif k < 0:
                    lhs, rhs = lhs * qi ** (-k), rhs * pi ** (-k)
            if lhs != rhs:
                return False
        return True

    __hash__ = None

    def __str__(self):
        return "[" + ":".join(str(c) for c in self.coords) + "]"

    def __repr__(self):
        return f"ProjPoint({self})"

    def to_json(self):
        return [c.to_json() for c in self.coords]

    def chart_cover_point(self, i: int) -> Tuple[GaussRat, GaussRat]:
        """Cover coordinates in chart i; requires x_i to be 1 after normalization by an l_i-th root."""
        xi = self.coords[i]
        if not xi:
            raise ValueError(f"point is not in chart {i}")
        j, k = chart_axes(i)
        if xi == ONE:
            return self.coords[j], self.coords[k]
        if self.weights[i] == 1:
            t = xi.inverse()
            return self.coords[j] * t ** self.weights[j], self.coords[k] * t ** self.weights[k]
        raise ValueError(f"no Q(i) cover representative in chart {i} for {self}")


def point_from_cover(i: int, x, y, weights) -> ProjPoint:
    j, k = chart_axes(i)
    c = [ZERO, ZERO, ZERO]
    c[i], c[j], c[k] = ONE, GaussRat.coerce(x), GaussRat.coerce(y)
    return ProjPoint(c, weights)


# ---------------------------------------------------------------------------
# singular points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChartSolutions:
    chart: int
    points: Tuple[Tuple[GaussRat, GaussRat], ...]
    residual: Tuple[Tuple[int, int], ...]

    @property
    def complete(self) -> bool:
        return not self.residual


def _roots_of_univariate_gcd(f: QHPoly, g: QHPoly, var: int):
    h = gcd(f, g)
    if not h:
        raise ValueError("both polynomials vanish")
    if h.is_constant():
        return [], []
    return gaussian_roots(h, var)


def _restrict_x(p: QHPoly, x0: GaussRat) -> QHPoly:
    return p.substitute({0: x0})


def singular_points_chart(F: Foliation, i: int) -> ChartSolutions:
    """Common zeros of the chart coefficients on the cover of chart i."""
    cf = chart_restrict(F.omega, i)
    a, b = cf.a, cf.b
    g = gcd(a, b)
    if not g.is_constant():
        raise NotZeroDimensional(i, g)
    if not a or not b:
        return ChartSolutions(i, (), ())
    R = resultant(a, b, 1)
    if R.is_constant():
        return ChartSolutions(i, (), ())
    xroots, residual = gaussian_roots(R, 0)
    points = []
    extra = []
    for x0, _ in xroots:
        ys, res = _roots_of_univariate_gcd(_restrict_x(a, x0), _restrict_x(b, x0), 1)
        points.extend((x0, y0) for y0, _ in ys)
        extra.extend(res)
    points.sort(key=lambda p: (p[0].re, p[0].im, p[1].re, p[1].im))
    return ChartSolutions(i, tuple(points), tuple(residual) + tuple(extra))


@dataclass(frozen=True)
class SingularSet:
    points: Tuple[ProjPoint, ...]
    residual: Tuple[Tuple[int, int, int], ...]  # (chart, degree, multiplicity)
    located: Tuple[Tuple[int, Tuple[GaussRat, GaussRat]], ...]  # chart and cover point per entry

    @property
    def complete(self) -> bool:
        return not self.residual

    def vertices(self) -> List[int]:
        return [p.support()[0] for p in self.points if p.is_vertex()]

    def __contains__(self, p: ProjPoint) -> bool:
        return any(p == q for q in self.points)


def singular_points(F: Foliation) -> SingularSet:
    """Singular points, each listed once, found on the first chart containing them."""
    if not F.saturated:
        raise NotZeroDimensional(-1, F.omega.coefficient_gcd())
    pts: List[ProjPoint] = []
    located = []
    residual = []
    w = F.weights

    def add(i, x, y):
        p = point_from_cover(i, x, y, w)
        if not any(p == q for q in pts):
            pts.append(p)
            located.append((i, (x, y)))

    sol = singular_points_chart(F, 0)
    for x, y in sol.points:
        add(0, x, y)
    residual.extend((0, deg, m) for deg, m in sol.residual)
    # chart 1 on the line x0 = 0 (cover coordinate x)
    cf = chart_restrict(F.omega, 1)
    a0, b0 = _restrict_x(cf.a, ZERO), _restrict_x(cf.b, ZERO)
    if not a0 and not b0:
        raise NotZeroDimensional(1, QHPoly.var(cf.a.weights, 0))
    ys, res = _roots_of_univariate_gcd(a0, b0, 1)
    for y0, _ in ys:
        add(1, ZERO, y0)
    residual.extend((1, deg, m) for deg, m in res)
    # chart 2: only the vertex is new
    cf = chart_restrict(F.omega, 2)
    if not cf.a.constant_value() and not cf.b.constant_value():
        add(2, ZERO, ZERO)
    return SingularSet(tuple(pts), tuple(residual), tuple(located))


# ---------------------------------------------------------------------------
# multiplicities
# ---------------------------------------------------------------------------


def algebraic_multiplicity(F: Foliation, i: int) -> int:
    """Lowest quasi-homogeneous degree of the chart form at the vertex p_i."""
    return chart_restrict(F.omega, i).r


SHEARS = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6)


def local_intersection(a: QHPoly, b: QHPoly, point=(0, 0)) -> int:
    """Intersection multiplicity of a = b = 0 at a point of the affine plane.

    The point is moved to the origin, then x -> x + t y is applied for t in
    ``SHEARS`` until one polynomial has a constant leading coefficient in y and
    the line x = 0 meets the common zero set only at the origin. The answer is
    the order at x = 0 of Res_y.
    """
    if a.weights != b.weights or a.nvars != 2:
        raise ValueError("expected two polynomials in two variables")
    w = a.weights
    X, Y = QHPoly.var(w, 0), QHPoly.var(w, 1)
    px, py = (GaussRat.coerce(c) for c in point)
    A = a.substitute({0: X + px, 1: Y + py})
    B = b.substitute({0: X + px, 1: Y + py})
    if A.constant_value() or B.constant_value():
        return 0
    g = gcd(A, B)
    if not g.is_constant() and not g.constant_value():
        raise NotZeroDimensional(-1, g)
    for t in SHEARS:
        At = A.substitute({0: X + Y * t})
        Bt = B.substitute({0: X + Y * t})
        if not any(p.degree_in(1) == p.total_degree() and p.degree_in(1) > 0 for p in (At, Bt)):
            continue
        h = gcd(_restrict_x(At, ZERO), _restrict_x(Bt, ZERO))
        if not h or len(h.terms) != 1:
            continue
        R = resultant(At, Bt, 1)
        if not R:
            continue
        return order_at(R, 0, ZERO)
    raise ShearExhausted(f"no admissible shear among {SHEARS}")


def milnor_global(weights, d: int) -> Fraction:
    l0, l1, l2 = (weights.as_tuple() if isinstance(weights, WeightVector) else tuple(weights))
    return Fraction(l0 * l1 + l0 * l2 + l1 * l2 + (d - l0 - l1 - l2) * d, l0 * l1 * l2)


@dataclass(frozen=True)
class MilnorEntry:
    point: ProjPoint
    chart: int
    cover_point: Tuple[GaussRat, GaussRat]
    cover_multiplicity: int
    stabilizer: int

    @property
    def local(self) -> Fraction:
        return Fraction(self.cover_multiplicity, self.stabilizer)

    def to_json(self) -> dict:
        return {"point": str(self.point), "chart": self.chart,
                "cover_point": [str(c) for c in self.cover_point],
                "cover_multiplicity": self.cover_multiplicity, "stabilizer": self.stabilizer,
                "local": str(self.local)}


@dataclass(frozen=True)
class MilnorReport:
    entries: Tuple[MilnorEntry, ...]
    residual: Tuple[Tuple[int, int, int], ...]
    global_value: Fraction

    @property
    def complete(self) -> bool:
        return not self.residual

    @property
    def total(self) -> Fraction:
        return sum((e.local for e in self.entries), Fraction(0))

    @property
    def consistent(self) -> Optional[bool]:
        return self.total == self.global_value if self.complete else None

    def to_json(self) -> dict:
        return {"entries": [e.to_json() for e in self.entries], "total": str(self.total),
                "global": str(self.global_value), "complete": self.complete,
                "residual": [list(r) for r in self.residual], "consistent": self.consistent}


def _stabilizer(i: int, cover_point, weights: WeightVector) -> int:
    j, k = chart_axes(i)
    g = weights[i]
    if cover_point[0]:
        g = igcd(g, weights[j])
    if cover_point[1]:
        g = igcd(g, weights[k])
    return g


def milnor_local(F: Foliation, sing: Optional[SingularSet] = None) -> MilnorReport:
    sing = sing or singular_points(F)
    entries = []
    charts = {}
    for p, (i, cp) in zip(sing.points, sing.located):
        if i not in charts:
            charts[i] = chart_restrict(F.omega, i)
        cf = charts[i]
        m = local_intersection(cf.a, cf.b, cp)
        entries.append(MilnorEntry(p, i, cp, m, _stabilizer(i, cp, F.weights)))
    return MilnorReport(tuple(entries), sing.residual, milnor_global(F.weights, F.d))


# ---------------------------------------------------------------------------
# P(1,1,k): exceptional divisor and Riccati criterion
# ---------------------------------------------------------------------------


def _require_p11k(F: Foliation) -> int:
    if not F.weights.is_p2k():
        raise ValueError(f"expected weights (1,1,k), got {F.weights.as_tuple()}")
    return F.weights.l2


def exceptional_invariant(F: Foliation) -> Tuple[bool, int]:
    """Whether E is invariant after the weighted blow-up at p2, and the order e."""
    k = _require_p11k(F)
    cf = chart_restrict(F.omega, 2)
    a, b = cf.initial()
    w = a.weights
    radial = QHPoly.var(w, 0) * a + QHPoly.var(w, 1) * b
    r = cf.r
    return (True, r - k) if radial else (False, r)


def blowup(F: Foliation, chart: str = "V0") -> BlowupForm:
    _require_p11k(F)
    return blowup_pullback(chart_restrict(F.omega, 2), chart)


@dataclass(frozen=True)
class RiccatiReport:
    k: int
    d: int
    r: int
    exceptional_invariant: bool
    e: int

    @property
    def r_criterion(self) -> bool:
        return self.r == self.d - self.k

    @property
    def riccati(self) -> bool:
        return self.e == self.d - 2 * self.k

    def bidegree(self) -> Tuple[int, int]:
        q, rem = divmod(self.d - self.e, self.k)
        if rem:
            raise ArithmeticError("d - e is not divisible by k")
        return self.d, q

    def to_json(self) -> dict:
        return {"k": self.k, "d": self.d, "r": self.r, "E_invariant": self.exceptional_invariant,
                "e": self.e, "r_equals_d_minus_k": self.r_criterion,
                "riccati": self.riccati, "bidegree": list(self.bidegree())}


def riccati_report(F: Foliation) -> RiccatiReport:
    k = _require_p11k(F)
    inv, e = exceptional_invariant(F)
    return RiccatiReport(k, F.d, algebraic_multiplicity(F, 2), inv, e)


def is_riccati(F: Foliation) -> bool:
    """Riccati test e = d - 2k; when E is invariant this is r = d - k."""
    return riccati_report(F).riccati
