"""Exact Gaussian rationals: a + b*i with a, b in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

ScalarLike = Union["GaussRat", int, Fraction]


class GaussRat:
    """An element of Q(i).

    Immutable and hashable. Mixed arithmetic with ``int`` and ``Fraction``
    is supported on both sides. Equality with plain rationals holds when the
    imaginary part is zero.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @classmethod
    def coerce(cls, value: ScalarLike) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        if isinstance(value, (int, Fraction, Rational)):
            return cls(Fraction(value))
        raise TypeError(f"cannot coerce {type(value).__name__} to GaussRat")

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return self.im == 0

    # -- ring operations ----------------------------------------------------

    def __add__(self, other: ScalarLike) -> "GaussRat":
        if isinstance(other, GaussRat):
            return GaussRat(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other: ScalarLike) -> "GaussRat":
        if isinstance(other, GaussRat):
            return GaussRat(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other: ScalarLike) -> "GaussRat":
        return (-self) + other

    def __mul__(self, other: ScalarLike) -> "GaussRat":
        if isinstance(other, GaussRat):
            if not other.im:
                return GaussRat(self.re * other.re, self.im * other.re)
            if not self.im:
                return GaussRat(self.re * other.re, self.re * other.im)
            return GaussRat(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        if isinstance(other, (int, Fraction)):
            return GaussRat(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRat":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        n = self.norm()
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other: ScalarLike) -> "GaussRat":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(i)")
            return GaussRat(self.re / other, self.im / other)
        if isinstance(other, GaussRat):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other: ScalarLike) -> "GaussRat":
        return GaussRat.coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "GaussRat":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussRat(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing -----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- text ---------------------------------------------------------------

    def __repr__(self) -> str:
        return f"GaussRat({self})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, data: dict) -> "GaussRat":
        return cls(Fraction(data["re"]), Fraction(data["im"]))


I = GaussRat(0, 1)
ZERO = GaussRat(0)
ONE = GaussRat(1)


class QuadExt:
    """u + v*sqrt(D) in Q(i)(sqrt(D)) for a fixed non-square D in Q(i)."""

    __slots__ = ("u", "v", "D")

    def __init__(self, u, v, D):
        object.__setattr__(self, "u", GaussRat.coerce(u))
        object.__setattr__(self, "v", GaussRat.coerce(v))
        object.__setattr__(self, "D", GaussRat.coerce(D))

    def __setattr__(self, name, value):
        raise AttributeError("QuadExt is immutable")

    def _lift(self, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            if other.D != self.D:
                raise ValueError("elements of different quadratic extensions")
            return other
        return QuadExt(GaussRat.coerce(other), ZERO, self.D)

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def __add__(self, other):
        o = self._lift(other)
        return QuadExt(self.u + o.u, self.v + o.v, self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.u, -self.v, self.D)

    def __sub__(self, other):
        o = self._lift(other)
        return QuadExt(self.u - o.u, self.v - o.v, self.D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return QuadExt(self.u * o.u + self.v * o.v * self.D, self.u * o.v + self.v * o.u, self.D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadExt":
        """The nontrivial automorphism sqrt(D) -> -sqrt(D)."""
        return QuadExt(self.u, -self.v, self.D)

    def norm(self) -> GaussRat:
        return self.u * self.u - self.v * self.v * self.D

    def inverse(self) -> "QuadExt":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("division by zero in quadratic extension")
        ni = n.inverse()
        return QuadExt(self.u * ni, -self.v * ni, self.D)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadExt(ONE, ZERO, self.D)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (GaussRat, int, Fraction)):
            return not self.v and self.u == other
        if isinstance(other, QuadExt):
            return self.D == other.D and self.u == other.u and self.v == other.v
        return NotImplemented

    def __hash__(self):
        return hash((self.u, self.v, self.D))

    def in_base_field(self) -> bool:
        return not self.v

    def __str__(self):
        if not self.v:
            return str(self.u)
        return f"({self.u}) + ({self.v})*sqrt({self.D})"

    __repr__ = __str__
