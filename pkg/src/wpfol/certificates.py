"""Certificates that no invariant curve of bounded quasi-degree passes through a point.

Let m_1, ..., m_N span the restrictions to a chart cover of all curves of
quasi-degree <= n. A curve f = sum c_k m_k through p that is invariant by the
foliation contains a local invariant branch through p, so the coefficient
vector c is annihilated by the Taylor expansion of the m_k along that branch.

* At a regular point the branch is the leaf; the classic extactic matrix
  (rows v^j(m_k)(p), j < N) plays this role.
* At a singular point whose linear part has eigenvalues lambda_1, lambda_2
  with lambda_2/lambda_1 not a positive rational (nondegenerate reduced or
  saddle-node), exactly two formal branches pass through p. They are
  computed order by order in Q(i) or a quadratic extension of it.

A nonzero N x N minor for every branch proves absence. A zero determinant is
reported as inconclusive and never upgraded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import __version__, linalg
from .forms import ChartForm, chart_axes, chart_restrict
from .foliation import Foliation, ProjPoint
from .poly import QHPoly, bareiss_det, gaussian_roots
from .scalars import GaussRat, ONE, QuadExt, ZERO


class Inconclusive(Exception):
    """The determinant vanished or the singularity is outside the method's scope."""

    def __init__(self, reason: str, **data):
        self.reason = reason
        self.data = data
        super().__init__(reason)


class PointNotRepresentable(ValueError):
    pass


class SizeCapExceeded(ValueError):
    pass


# ---------------------------------------------------------------------------
# curve spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurveSpaceBasis:
    weights: Tuple[int, int, int]
    chart: int
    n: int
    monomials: Tuple[Tuple[int, int], ...]

    @property
    def N(self) -> int:
        return len(self.monomials)

    @property
    def cover_weights(self) -> Tuple[int, int]:
        j, k = chart_axes(self.chart)
        return self.weights[j], self.weights[k]

    def polys(self) -> List[QHPoly]:
        return [QHPoly.monomial(self.cover_weights, e) for e in self.monomials]


def curve_space_basis(weights, i: int, n: int) -> CurveSpaceBasis:
    """Cover monomials x^a y^b of weighted degree s <= n that occur in curves of degree <= n.

    s > 0 always occurs (take x_i to the power 0); s = 0 occurs only through
    x_i^g, which needs l_i <= n.
    """
    w = tuple(weights.as_tuple() if hasattr(weights, "as_tuple") else weights)
    if n < 1:
        raise ValueError("degree bound must be at least 1")
    j, k = chart_axes(i)
    wj, wk = w[j], w[k]
    monos = []
    for s in range(n, -1, -1):
        if s == 0 and w[i] > n:
            continue
        for a in range(s // wj, -1, -1):
            rest = s - a * wj
            if rest % wk == 0:
                monos.append((a, rest // wk))
    monos.sort(key=lambda e: (wj * e[0] + wk * e[1], e), reverse=False)
    return CurveSpaceBasis(w, i, n, tuple(monos))


# ---------------------------------------------------------------------------
# classic extactic matrix
# ---------------------------------------------------------------------------


def _apply_field(cf: ChartForm, f: QHPoly) -> QHPoly:
    vx, vy = cf.vector_field()
    return vx * f.diff(0) + vy * f.diff(1)


def _extactic_rows(cf: ChartForm, basis: CurveSpaceBasis) -> List[List[QHPoly]]:
    rows = [basis.polys()]
    for _ in range(basis.N - 1):
        rows.append([_apply_field(cf, m) for m in rows[-1]])
    return rows


def extactic_matrix_at(F: Foliation, i: int, p: Sequence, n: int) -> List[List[GaussRat]]:
    cf = chart_restrict(F.omega, i)
    basis = curve_space_basis(F.weights, i, n)
    return [[m.evaluate(p) for m in row] for row in _extactic_rows(cf, basis)]


def extactic_polynomial(F: Foliation, i: int, n: int, cap: int = 8) -> QHPoly:
    """Symbolic extactic determinant on the cover of chart i (zero polynomial if it vanishes)."""
    cf = chart_restrict(F.omega, i)
    basis = curve_space_basis(F.weights, i, n)
    if basis.N > cap:
        raise SizeCapExceeded(f"curve space dimension {basis.N} exceeds cap {cap}")
    return bareiss_det(_extactic_rows(cf, basis), basis.cover_weights)


# ---------------------------------------------------------------------------
# formal branches at a singular point
# ---------------------------------------------------------------------------


def _series_mul(a: list, b: list, T: int, zero) -> list:
    out = [zero] * (T + 1)
    for i, x in enumerate(a[:T + 1]):
        if not x:
            continue
        for j in range(min(len(b), T + 1 - i)):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _eval_series(p: QHPoly, xs: list, ys: list, T: int, zero, one) -> list:
    """p(x(u), y(u)) truncated at order T."""
    dx = max((e[0] for e in p.terms), default=0)
    dy = max((e[1] for e in p.terms), default=0)
    xp = [[one] + [zero] * T]
    for _ in range(dx):
        xp.append(_series_mul(xp[-1], xs, T, zero))
    yp = [[one] + [zero] * T]
    for _ in range(dy):
        yp.append(_series_mul(yp[-1], ys, T, zero))
    out = [zero] * (T + 1)
    for (a, b), c in p.terms.items():
        term = _series_mul(xp[a], yp[b], T, zero)
        for k in range(T + 1):
            if term[k]:
                out[k] = out[k] + term[k] * c
    return out


@dataclass(frozen=True)
class LinearPart:
    matrix: Tuple[Tuple[GaussRat, GaussRat], Tuple[GaussRat, GaussRat]]
    eigenvalues: Tuple[object, object]
    discriminant: GaussRat
    split: bool


def _linear_part(cf: ChartForm, p) -> LinearPart:
    vx, vy = cf.vector_field()
    J = ((vx.diff(0).evaluate(p), vx.diff(1).evaluate(p)),
         (vy.diff(0).evaluate(p), vy.diff(1).evaluate(p)))
    tr = J[0][0] + J[1][1]
    det = J[0][0] * J[1][1] - J[0][1] * J[1][0]
    disc = tr * tr - det * 4
    t = QHPoly.var((1,), 0)
    roots, residual = gaussian_roots(t * t - t * tr + det, 0)
    if residual:
        s = QuadExt(ZERO, ONE, disc)
        half = GaussRat(Fraction(1, 2))
        lams = ((s + tr) * half, (-s + tr) * half)
        return LinearPart(J, lams, disc, False)
    if len(roots) == 1:
        lams = (roots[0][0], roots[0][0])
    else:
        lams = (roots[0][0], roots[1][0])
    return LinearPart(J, lams, disc, True)


def _eigenvector(J, lam):
    a, b = J[0]
    c, d = J[1]
    if b:
        return (b, lam - a)
    if c:
        return (lam - d, c)
    return (ONE, ZERO) if lam == a else (ZERO, ONE)


def _positive_rational_ratio(l1, l2) -> bool:
    if not l1 or not l2:
        return False
    r = l2 / l1
    if isinstance(r, QuadExt):
        if not r.in_base_field():
            return False
        r = r.u
    return r.im == 0 and r.re > 0


def formal_branch(cf: ChartForm, p, lam_self, lam_other, e_self, e_other, T: int):
    """Coefficients of (x(u), y(u)) of the formal invariant branch tangent to e_self."""
    zero = lam_self * 0 + ZERO
    one = zero + ONE
    vx, vy = cf.vector_field()
    detS = e_self[0] * e_other[1] - e_self[1] * e_other[0]
    h = [zero] * (T + 1)

    def curve(order):
        xs = [zero] * (order + 1)
        ys = [zero] * (order + 1)
        xs[0], ys[0] = zero + p[0], zero + p[1]
        if order >= 1:
            xs[1], ys[1] = zero + e_self[0], zero + e_self[1]
        for m in range(2, order + 1):
            xs[m] = e_other[0] * h[m]
            ys[m] = e_other[1] * h[m]
        return xs, ys

    for n in range(2, T + 1):
        xs, ys = curve(n)
        X = _eval_series(vx, xs, ys, n, zero, one)
        Y = _eval_series(vy, xs, ys, n, zero, one)
        dxs = [xs[m + 1] * (m + 1) for m in range(n)] + [zero]
        dys = [ys[m + 1] * (m + 1) for m in range(n)] + [zero]
        c = zero
        for m in range(n + 1):
            c = c + X[m] * dys[n - m] - Y[m] * dxs[n - m]
        h[n] = -c / ((lam_self * n - lam_other) * detS)
    return curve(T)


def _branch_matrix(basis: CurveSpaceBasis, xs, ys, T: int, zero, one) -> List[list]:
    cols = [_eval_series(m, xs, ys, T, zero, one) for m in basis.polys()]
    return [[col[t] for col in cols] for t in range(T + 1)]


def _minor(rows: List[list], N: int, zero, one):
    chosen = linalg.independent_rows(rows, zero)
    if len(chosen) < N:
        return None, chosen
    return linalg.det([rows[r] for r in chosen], zero, one), chosen


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AbsenceCertificate:
    foliation_hash: str
    form: str
    weights: Tuple[int, int, int]
    chart: int
    point: Tuple[GaussRat, GaussRat]
    projective_point: str
    n: int
    N: int
    method: str
    determinant: GaussRat
    rows: Tuple[Tuple[int, ...], ...]
    series_order: int
    tool_version: str = __version__

    def to_json(self) -> dict:
        return {
            "foliation_hash": self.foliation_hash,
            "form": self.form,
            "weights": list(self.weights),
            "chart": self.chart,
            "point": [c.to_json() for c in self.point],
            "projective_point": self.projective_point,
            "n": self.n,
            "N": self.N,
            "method": self.method,
            "determinant": self.determinant.to_json(),
            "rows": [list(r) for r in self.rows],
            "series_order": self.series_order,
            "tool_version": self.tool_version,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "AbsenceCertificate":
        return cls(
            data["foliation_hash"], data["form"], tuple(data["weights"]), data["chart"],
            tuple(GaussRat.from_json(c) for c in data["point"]), data["projective_point"],
            data["n"], data["N"], data["method"], GaussRat.from_json(data["determinant"]),
            tuple(tuple(r) for r in data["rows"]), data["series_order"], data["tool_version"],
        )


def _choose_chart(F: Foliation, p: ProjPoint) -> Tuple[int, Tuple[GaussRat, GaussRat]]:
    for i in range(3):
        if p.coords[i]:
            try:
                return i, p.chart_cover_point(i)
            except ValueError:
                continue
    raise PointNotRepresentable(f"{p} has no cover representative with Q(i) coordinates")


def _determinant_at(F: Foliation, i: int, cp, n: int, series_order: Optional[int] = None):
    """Returns (method, determinant, rows, series_order); raises Inconclusive."""
    cf = chart_restrict(F.omega, i)
    basis = curve_space_basis(F.weights, i, n)
    N = basis.N
    vx, vy = cf.vector_field()
    if vx.evaluate(cp) or vy.evaluate(cp):
        M = [[m.evaluate(cp) for m in row] for row in _extactic_rows(cf, basis)]
        det = linalg.det(M, ZERO, ONE)
        if not det:
            raise Inconclusive("extactic determinant vanishes", N=N)
        return "extactic", det, (tuple(range(N)),), 0
    lp = _linear_part(cf, cp)
    l1, l2 = lp.eigenvalues
    if not l1 and not l2:
        raise Inconclusive("singular point with nilpotent linear part")
    if l1 == l2 or _positive_rational_ratio(l1, l2):
        raise Inconclusive("eigenvalue ratio is a positive rational", eigenvalues=[str(l1), str(l2)])
    e1, e2 = _eigenvector(lp.matrix, l1), _eigenvector(lp.matrix, l2)
    T = series_order if series_order is not None else 2 * N + 6
    zero = l1 * 0 + ZERO
    one = zero + ONE
    total = one
    rows = []
    for ls, lo, es, eo in ((l1, l2, e1, e2), (l2, l1, e2, e1)):
        xs, ys = formal_branch(cf, cp, ls, lo, es, eo, T)
        minor, chosen = _minor(_branch_matrix(basis, xs, ys, T, zero, one), N, zero, one)
        if minor is None:
            raise Inconclusive("a formal branch is annihilated by the curve space", rank=len(chosen), N=N)
        total = total * minor
        rows.append(tuple(chosen))
    if isinstance(total, QuadExt):
        if not total.in_base_field():
            raise ArithmeticError("branch determinant product left the base field")
        total = total.u
    return "separatrix", total, tuple(rows), T


def certify_absence(F: Foliation, p: ProjPoint, n: int) -> AbsenceCertificate:
    """Prove that no F-invariant curve of quasi-degree <= n passes through p, or raise Inconclusive."""
    if not F.saturated:
        raise ValueError("certificates require a saturated foliation")
    if p.weights != F.weights:
        raise ValueError("point and foliation live on different planes")
    i, cp = _choose_chart(F, p)
    method, det, rows, T = _determinant_at(F, i, cp, n)
    N = curve_space_basis(F.weights, i, n).N
    return AbsenceCertificate(F.hash(), str(F.omega), F.weights.as_tuple(), i, cp, str(p),
                              n, N, method, det, rows, T)


def verify_certificate(cert: Union[AbsenceCertificate, dict]) -> bool:
    """Recompute the determinant from the serialized form and point."""
    if isinstance(cert, dict):
        cert = AbsenceCertificate.from_json(cert)
    F = Foliation.parse(cert.form, cert.weights)
    if F.hash() != cert.foliation_hash:
        return False
    try:
        method, det, rows, T = _determinant_at(F, cert.chart, cert.point, cert.n, cert.series_order or None)
    except Inconclusive:
        return False
    return (method == cert.method and det == cert.determinant and bool(det)
            and rows == cert.rows and curve_space_basis(F.weights, cert.chart, cert.n).N == cert.N)
