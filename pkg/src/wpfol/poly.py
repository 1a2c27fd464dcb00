"""Sparse polynomials in up to three variables over Q(i), graded by a weight vector.

Terms are stored as a dict from exponent tuples to nonzero ``GaussRat``
coefficients. The canonical term order is descending lexicographic on the
exponent tuple; ``str`` and ``terms_sorted`` follow it, so equal polynomials
always serialize identically.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .scalars import GaussRat, ONE, ZERO

Exps = Tuple[int, ...]
Coeff = Union[GaussRat, int, Fraction]

VAR_NAMES = {3: ("x0", "x1", "x2"), 2: ("x", "y"), 1: ("t",)}


class WeightMismatch(ValueError):
    pass


class NotHomogeneous(ValueError):
    """Raised when a polynomial mixes weighted degrees."""

    def __init__(self, degrees):
        self.degrees = frozenset(degrees)
        super().__init__(f"not quasi-homogeneous; occurring degrees {sorted(self.degrees)}")


@dataclass(frozen=True)
class WeightVector:
    """The weights (l0, l1, l2) of a weighted projective plane."""

    l0: int
    l1: int
    l2: int

    def __post_init__(self):
        if min(self.l0, self.l1, self.l2) < 1:
            raise ValueError(f"weights must be positive, got {self.as_tuple()}")

    @classmethod
    def parse(cls, text: str) -> "WeightVector":
        parts = [int(p) for p in text.replace(" ", "").split(",")]
        if len(parts) != 3:
            raise ValueError(f"expected three comma-separated weights, got {text!r}")
        return cls(*parts)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.l0, self.l1, self.l2)

    def __iter__(self):
        return iter(self.as_tuple())

    def __getitem__(self, i: int) -> int:
        return self.as_tuple()[i]

    def __len__(self):
        return 3

    @property
    def total(self) -> int:
        return self.l0 + self.l1 + self.l2

    @property
    def product(self) -> int:
        return self.l0 * self.l1 * self.l2

    def is_pairwise_coprime(self) -> bool:
        l0, l1, l2 = self.as_tuple()
        return igcd(l0, l1) == 1 and igcd(l0, l2) == 1 and igcd(l1, l2) == 1

    def is_sorted(self) -> bool:
        return self.l0 <= self.l1 <= self.l2

    def normalized(self) -> "WeightVector":
        return WeightVector(*sorted(self.as_tuple()))

    def is_p2k(self) -> bool:
        """True for P(1,1,k), any k >= 1."""
        return self.l0 == 1 and self.l1 == 1

    def __str__(self):
        return ",".join(str(l) for l in self.as_tuple())


def _as_weights(weights) -> Tuple[int, ...]:
    if isinstance(weights, WeightVector):
        return weights.as_tuple()
    return tuple(int(w) for w in weights)


class QHPoly:
    """Immutable sparse polynomial with attached variable weights."""

    __slots__ = ("weights", "terms", "_hash")

    def __init__(self, weights, terms: Optional[Mapping[Exps, Coeff]] = None):
        w = _as_weights(weights)
        clean: Dict[Exps, GaussRat] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != len(w):
                    raise ValueError(f"exponent {e} does not match {len(w)} variables")
                c = GaussRat.coerce(c)
                if c:
                    clean[tuple(e)] = c
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("QHPoly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, weights) -> "QHPoly":
        return cls(weights)

    @classmethod
    def const(cls, weights, c: Coeff) -> "QHPoly":
        w = _as_weights(weights)
        return cls(w, {(0,) * len(w): c})

    @classmethod
    def var(cls, weights, i: int, power: int = 1) -> "QHPoly":
        w = _as_weights(weights)
        e = [0] * len(w)
        e[i] = power
        return cls(w, {tuple(e): ONE})

    @classmethod
    def monomial(cls, weights, exps: Sequence[int], c: Coeff = 1) -> "QHPoly":
        return cls(weights, {tuple(exps): c})

    @classmethod
    def _raw(cls, weights: Tuple[int, ...], terms: Dict[Exps, GaussRat]) -> "QHPoly":
        # trusted constructor: terms already clean
        p = object.__new__(cls)
        object.__setattr__(p, "weights", weights)
        object.__setattr__(p, "terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    # -- basic queries ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.weights)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> GaussRat:
        return self.terms.get((0,) * self.nvars, ZERO)

    def terms_sorted(self) -> List[Tuple[Exps, GaussRat]]:
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def leading(self) -> Tuple[Exps, GaussRat]:
        e = max(self.terms)
        return e, self.terms[e]

    def term_degree(self, e: Exps) -> int:
        return sum(w * k for w, k in zip(self.weights, e))

    def degrees(self) -> frozenset:
        return frozenset(self.term_degree(e) for e in self.terms)

    def is_quasi_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def weighted_degree(self) -> int:
        if not self.terms:
            raise ValueError("weighted degree of the zero polynomial is undefined")
        degs = self.degrees()
        if len(degs) != 1:
            raise NotHomogeneous(degs)
        return next(iter(degs))

    def max_degree(self) -> int:
        return max(self.degrees())

    def min_degree(self) -> int:
        return min(self.degrees())

    def total_degree(self) -> int:
        return max(sum(e) for e in self.terms) if self.terms else -1

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> List[int]:
        return [i for i in range(self.nvars) if any(e[i] for e in self.terms)]

    def homogeneous_part(self, degree: int) -> "QHPoly":
        return QHPoly._raw(
            self.weights, {e: c for e, c in self.terms.items() if self.term_degree(e) == degree}
        )

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "QHPoly"):
        if self.weights != other.weights:
            raise WeightMismatch(f"weight vectors differ: {self.weights} vs {other.weights}")

    def _lift(self, other) -> "QHPoly":
        if isinstance(other, QHPoly):
            self._check(other)
            return other
        return QHPoly.const(self.weights, other)

    def __add__(self, other) -> "QHPoly":
        if not isinstance(other, (QHPoly, GaussRat, int, Fraction)):
            return NotImplemented
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = s + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return QHPoly._raw(self.weights, out)

    __radd__ = __add__

    def __neg__(self) -> "QHPoly":
        return QHPoly._raw(self.weights, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "QHPoly":
        if not isinstance(other, (QHPoly, GaussRat, int, Fraction)):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QHPoly":
        return (-self) + other

    def scale(self, c: Coeff) -> "QHPoly":
        c = GaussRat.coerce(c)
        if not c:
            return QHPoly._raw(self.weights, {})
        return QHPoly._raw(self.weights, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "QHPoly":
        if isinstance(other, (GaussRat, int, Fraction)):
            return self.scale(other)
        if not isinstance(other, QHPoly):
            return NotImplemented
        self._check(other)
        if len(other.terms) == 1:
            (f, d), = other.terms.items()
            return QHPoly._raw(
                self.weights,
                {tuple(a + b for a, b in zip(e, f)): c * d for e, c in self.terms.items()},
            )
        out: Dict[Exps, GaussRat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return QHPoly._raw(self.weights, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QHPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = QHPoly.const(self.weights, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c) -> "QHPoly":
        if isinstance(c, QHPoly):
            if not c.is_constant():
                raise TypeError("use divides() for polynomial division")
            c = c.constant_value()
        return self.scale(GaussRat.coerce(c).inverse())

    def __eq__(self, other) -> bool:
        if isinstance(other, QHPoly):
            return self.weights == other.weights and self.terms == other.terms
        if isinstance(other, (GaussRat, int, Fraction)):
            c = GaussRat.coerce(other)
            if not c:
                return not self.terms
            return self.is_constant() and self.constant_value() == c
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.weights, frozenset(self.terms.items()))))
        return self._hash

    # -- calculus / substitution ----------------------------------------------

    def diff(self, i: int) -> "QHPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return QHPoly._raw(self.weights, out)

    def evaluate(self, point: Sequence[Coeff]) -> GaussRat:
        point = [GaussRat.coerce(v) for v in point]
        total = ZERO
        powers: Dict[Tuple[int, int], GaussRat] = {}
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in powers:
                        powers[key] = point[i] ** k
                    term = term * powers[key]
            total = total + term
        return total

    def substitute(self, mapping: Mapping[int, Union["QHPoly", Coeff]], target_weights=None) -> "QHPoly":
        """Replace variable i by ``mapping[i]``.

        Without ``target_weights`` the result lives in the same ring and
        unmapped variables stay put. With ``target_weights`` every variable
        must be mapped and images must live in the target ring.
        """
        tw = self.weights if target_weights is None else _as_weights(target_weights)
        images: Dict[int, QHPoly] = {}
        for i in range(self.nvars):
            if i in mapping:
                img = mapping[i]
                images[i] = img if isinstance(img, QHPoly) else QHPoly.const(tw, img)
                if images[i].weights != tw:
                    raise WeightMismatch("substitution image lives in a different ring")
            elif target_weights is None:
                images[i] = QHPoly.var(tw, i)
            else:
                raise ValueError(f"variable {i} is not mapped")
        cache: Dict[Tuple[int, int], QHPoly] = {}

        def power(i: int, k: int) -> QHPoly:
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        out = QHPoly.zero(tw)
        for e, c in self.terms.items():
            term = QHPoly.const(tw, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def coeffs_in(self, i: int) -> List["QHPoly"]:
        """Coefficients as a polynomial in variable i, index = power."""
        deg = self.degree_in(i)
        buckets: List[Dict[Exps, GaussRat]] = [dict() for _ in range(deg + 1)]
        for e, c in self.terms.items():
            f = list(e)
            k = f[i]
            f[i] = 0
            buckets[k][tuple(f)] = c
        return [QHPoly._raw(self.weights, b) for b in buckets]

    def monic(self) -> "QHPoly":
        """Scale so that the leading coefficient (canonical order) is 1."""
        if not self.terms:
            return self
        _, lc = self.leading()
        return self.scale(lc.inverse())

    def map_exponents(self, fn, weights=None) -> "QHPoly":
        out: Dict[Exps, GaussRat] = {}
        for e, c in self.terms.items():
            f = tuple(fn(e))
            out[f] = out[f] + c if f in out else c
        return QHPoly(weights if weights is not None else self.weights, out)

    # -- text ---------------------------------------------------------------

    def var_names(self) -> Sequence[str]:
        return VAR_NAMES.get(self.nvars) or tuple(f"x{i}" for i in range(self.nvars))

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"QHPoly({self.weights}, {self})"


def _format_coeff(c: GaussRat) -> Tuple[str, str]:
    """Return (sign, magnitude text) for a term coefficient."""
    if c.im == 0:
        sign = "-" if c.re < 0 else "+"
        return sign, str(abs(c.re))
    if c.re == 0:
        sign = "-" if c.im < 0 else "+"
        return sign, f"{abs(c.im)}*i"
    return "+", f"({c})"


def format_poly(p: QHPoly, names: Optional[Sequence[str]] = None) -> str:
    if not p.terms:
        return "0"
    names = names or p.var_names()
    parts = []
    for e, c in p.terms_sorted():
        sign, mag = _format_coeff(c)
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if factors:
            if mag == "1":
                body = "*".join(factors)
            else:
                body = mag + "*" + "*".join(factors)
        else:
            body = mag
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# division, gcd, resultants
# ---------------------------------------------------------------------------


def divides(f: QHPoly, p: QHPoly) -> Tuple[bool, Optional[QHPoly]]:
    """Exact divisibility test. Returns ``(True, h)`` with ``p == f*h`` or ``(False, None)``.

    Single-divisor lex division: the remainder is zero iff f divides p.
    """
    if not f:
        raise ZeroDivisionError("division by the zero polynomial")
    f._check(p)
    if not p:
        return True, QHPoly.zero(p.weights)
    lf, lc = f.leading()
    lc_inv = lc.inverse()
    if len(f.terms) == 1:
        out = {}
        for e, c in p.terms.items():
            q = tuple(a - b for a, b in zip(e, lf))
            if min(q) < 0:
                return False, None
            out[q] = c * lc_inv
        return True, QHPoly._raw(p.weights, out)
    rem = dict(p.terms)
    quot: Dict[Exps, GaussRat] = {}
    f_terms = list(f.terms.items())
    while rem:
        e = max(rem)
        q = tuple(a - b for a, b in zip(e, lf))
        if min(q) < 0:
            return False, None
        c = rem[e] * lc_inv
        quot[q] = c
        for fe, fc in f_terms:
            t = tuple(a + b for a, b in zip(fe, q))
            v = rem.get(t)
            nv = -(fc * c) if v is None else v - fc * c
            if nv:
                rem[t] = nv
            elif v is not None:
                del rem[t]
    return True, QHPoly._raw(p.weights, quot)


def exact_div(p: QHPoly, f: QHPoly) -> QHPoly:
    ok, h = divides(f, p)
    if not ok:
        raise ArithmeticError(f"{f} does not divide {p}")
    return h


def _to_sympy_poly(p: QHPoly):
    from sympy import QQ, QQ_I, Poly, symbols

    gens = symbols(f"z0:{p.nvars}")
    rep = {e: QQ_I(QQ(c.re.numerator, c.re.denominator), QQ(c.im.numerator, c.im.denominator))
           for e, c in p.terms.items()}
    return Poly.from_dict(rep, gens, domain=QQ_I)


def _from_sympy_poly(poly, weights: Tuple[int, ...]) -> QHPoly:
    def frac(q):
        return Fraction(int(q.numerator), int(q.denominator))

    terms = {tuple(int(k) for k in e): GaussRat(frac(c.x), frac(c.y))
             for e, c in poly.as_dict(native=True).items()}
    return QHPoly._raw(weights, {e: c for e, c in terms.items() if c})


# dense univariate helpers: coefficient lists, lowest degree first

def _u_trim(c: List[GaussRat]) -> List[GaussRat]:
    while c and not c[-1]:
        c.pop()
    return c


def _u_divmod(a: List[GaussRat], b: List[GaussRat]) -> Tuple[List[GaussRat], List[GaussRat]]:
    a = _u_trim(list(a))
    inv = b[-1].inverse()
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        c = a[-1] * inv
        shift = len(a) - len(b)
        q[shift] = c
        for i, bc in enumerate(b):
            a[shift + i] = a[shift + i] - c * bc
        a.pop()
        _u_trim(a)
    return q, a


def _u_gcd(f: List[GaussRat], g: List[GaussRat]) -> List[GaussRat]:
    """Monic gcd (the zero list when both vanish)."""
    a, b = _u_trim(list(f)), _u_trim(list(g))
    while b:
        a, b = b, _u_divmod(a, b)[1]
    if not a:
        return a
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _u_mul(a: List[GaussRat], b: List[GaussRat]) -> List[GaussRat]:
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _uni_gcd_degree(f: List[GaussRat], g: List[GaussRat]) -> int:
    return len(_u_gcd(f, g)) - 1


def _coprime_by_specialization(p: QHPoly, q: QHPoly, attempts: int = 3) -> bool:
    """Exact sufficient test for gcd(p, q) = 1.

    For each variable v the others are fixed at small integers where the
    leading coefficients of p and q in v survive; a constant univariate gcd
    then forces the true gcd to have degree 0 in v.
    """
    n = p.nvars
    for v in range(n):
        dp, dq = p.degree_in(v), q.degree_in(v)
        if dp == 0 or dq == 0:
            continue
        lp, lq = p.coeffs_in(v)[dp], q.coeffs_in(v)[dq]
        for t in range(attempts):
            point = [GaussRat(2 + 3 * t + 5 * j) for j in range(n)]
            if not lp.evaluate(point) or not lq.evaluate(point):
                continue
            fp = [c.evaluate(point) for c in p.coeffs_in(v)]
            fq = [c.evaluate(point) for c in q.coeffs_in(v)]
            if _uni_gcd_degree(fp, fq) == 0:
                break
        else:
            return False
    return True


def gcd(p: QHPoly, q: QHPoly) -> QHPoly:
    """Greatest common divisor over Q(i), leading coefficient normalized to 1.

    ``gcd(0, q)`` is ``q`` normalized and ``gcd(0, 0)`` is 0. Monomial and
    constant cases are handled directly; the general multivariate case is
    delegated to sympy's Q(i) polynomial gcd.
    """
    p._check(q)
    if not p:
        return q.monic()
    if not q:
        return p.monic()
    if p.is_constant() or q.is_constant():
        return QHPoly.const(p.weights, 1)
    if len(p.terms) == 1 or len(q.terms) == 1:
        mono, other = (p, q) if len(p.terms) == 1 else (q, p)
        (e, _), = mono.terms.items()
        low = [min(f[i] for f in other.terms) for i in range(p.nvars)]
        return QHPoly.monomial(p.weights, tuple(min(a, b) for a, b in zip(e, low)))
    if _coprime_by_specialization(p, q):
        return QHPoly.const(p.weights, 1)
    g = _to_sympy_poly(p).gcd(_to_sympy_poly(q))
    return _from_sympy_poly(g, p.weights).monic()


def sylvester_matrix(p: QHPoly, q: QHPoly, var: int) -> List[List[QHPoly]]:
    """Sylvester matrix in ``var``; p's coefficients fill the top rows."""
    p._check(q)
    cp = p.coeffs_in(var)[::-1]
    cq = q.coeffs_in(var)[::-1]
    m, n = len(cp) - 1, len(cq) - 1
    size = m + n
    zero = QHPoly.zero(p.weights)
    rows = []
    for k in range(n):
        rows.append([zero] * k + cp + [zero] * (size - k - m - 1))
    for k in range(m):
        rows.append([zero] * k + cq + [zero] * (size - k - n - 1))
    return rows


def bareiss_det(matrix: List[List[QHPoly]], weights) -> QHPoly:
    """Fraction-free determinant of a square matrix of polynomials."""
    n = len(matrix)
    if n == 0:
        return QHPoly.const(weights, 1)
    M = [row[:] for row in matrix]
    sign = 1
    prev = QHPoly.const(weights, 1)
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return QHPoly.zero(weights)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = exact_div(num, prev) if not prev.is_constant() else num / prev.constant_value()
            M[i][k] = QHPoly.zero(weights)
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def resultant(p: QHPoly, q: QHPoly, var: int) -> QHPoly:
    """Res_var(p, q) as the Sylvester determinant (p in the top rows)."""
    p._check(q)
    if not p or not q:
        return QHPoly.zero(p.weights)
    return bareiss_det(sylvester_matrix(p, q, var), p.weights)


# ---------------------------------------------------------------------------
# univariate helpers over Q(i)
# ---------------------------------------------------------------------------


def univariate_coeffs(p: QHPoly, var: int) -> List[GaussRat]:
    """Coefficients (index = power) of a polynomial involving only ``var``."""
    others = [i for i in p.variables() if i != var]
    if others:
        raise ValueError(f"polynomial {p} is not univariate in variable {var}")
    return [c.constant_value() for c in p.coeffs_in(var)] if p else []


def order_at(p: QHPoly, var: int, root: Coeff) -> int:
    """Multiplicity of ``root`` as a zero of the univariate polynomial p."""
    coeffs = univariate_coeffs(p, var)
    if not any(coeffs):
        raise ValueError("order of the zero polynomial is undefined")
    root = GaussRat.coerce(root)
    k = 0
    while True:
        # synthetic division by (t - root)
        n = len(coeffs) - 1
        acc = ZERO
        quotient = [ZERO] * n
        for i in range(n, -1, -1):
            acc = acc * root + coeffs[i]
            if i > 0:
                quotient[i - 1] = acc
        if acc:
            return k
        k += 1
        coeffs = quotient


def _rational_factors(coeffs: List[Fraction]):
    """Irreducible factors over Q of a rational univariate polynomial, as (coeff list, multiplicity)."""
    import sympy as sp

    t = sp.Symbol("t")
    poly = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], t, domain=sp.QQ)
    out = []
    for fac, mult in poly.factor_list()[1]:
        out.append(([Fraction(int(sp.Rational(c).p), int(sp.Rational(c).q)) for c in reversed(fac.all_coeffs())],
                    mult))
    return out


def _qi_irreducible_degrees(f: List[GaussRat]) -> List[Tuple[int, int]]:
    """Degrees of irreducible factors over Q(i) via sympy (slow path)."""
    import sympy as sp
    from sympy import QQ_I, Poly

    t = sp.Symbol("t")
    poly = Poly([sp.Rational(c.re.numerator, c.re.denominator)
                 + sp.I * sp.Rational(c.im.numerator, c.im.denominator) for c in reversed(f)], t, domain=QQ_I)
    return [(fac.degree(), m) for fac, m in poly.factor_list()[1] if fac.degree() > 0]


def _strip(f: List[GaussRat], g: List[GaussRat]) -> Tuple[List[GaussRat], int]:
    """Divide f by g as often as possible; return the cofactor and the count."""
    m = 0
    while len(f) > 1:
        q, r = _u_divmod(f, g)
        if r:
            break
        f, m = q, m + 1
    return f, m


def gaussian_roots(p: QHPoly, var: int):
    """Roots in Q(i) with multiplicities, plus residual irreducible factors.

    Returns ``(roots, residual)`` where roots is a list of ``(GaussRat, mult)``
    and residual a list of ``(degree, mult)`` for irreducible factors of
    degree > 1 over Q(i).

    The norm f * conj(f) has rational coefficients and is factored over Q.
    A Q(i) root of f appears there as a linear factor or as a quadratic
    with rational imaginary part; candidates are confirmed exactly. An
    irreducible factor h over Q meets f in gcd(f, h), which is irreducible
    over Q(i) unless h splits and both conjugate halves divide f; only that
    case is handed to a full Q(i) factorization.
    """
    f = _u_trim(univariate_coeffs(p, var))
    if not f:
        raise ValueError("roots of the zero polynomial are undefined")
    if len(f) == 1:
        return [], []
    fbar = [c.conjugate() for c in f]
    norm = _u_mul(f, fbar)
    rational = [c.re for c in norm]
    roots, residual = [], []
    for h, _ in _rational_factors(rational):
        deg = len(h) - 1
        candidates = []
        if deg == 1:
            candidates = [GaussRat(-h[0] / h[1])]
        elif deg == 2:
            c0, c1, c2 = h
            disc = c1 * c1 - 4 * c0 * c2
            if disc < 0:
                v2 = -disc / (4 * c2 * c2)
                num, den = _isqrt_exact(v2.numerator), _isqrt_exact(v2.denominator)
                if num is not None and den is not None:
                    u = -c1 / (2 * c2)
                    candidates = [GaussRat(u, Fraction(num, den)), GaussRat(u, -Fraction(num, den))]
        found = False
        for z in candidates:
            f, m = _strip(f, [-z, ONE])
            if m:
                roots.append((z, m))
                found = True
        if found or deg == 1:
            continue
        H = [GaussRat(c) for c in h]
        pieces: Dict[Tuple[GaussRat, ...], int] = {}
        while True:
            g = _u_gcd(f, H)
            if len(g) <= 1:
                break
            f = _u_divmod(f, g)[0]
            pieces[tuple(g)] = pieces.get(tuple(g), 0) + 1
        for g, m in pieces.items():
            if len(g) - 1 == deg and deg % 2 == 0:
                residual.extend((dg, mm * m) for dg, mm in _qi_irreducible_degrees(list(g)))
            else:
                residual.append((len(g) - 1, m))
    roots.sort(key=lambda rm: (rm[0].re, rm[0].im))
    residual.sort()
    return roots, residual


def _isqrt_exact(n: int):
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None
