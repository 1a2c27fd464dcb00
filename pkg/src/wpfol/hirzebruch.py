"""Intersection arithmetic on Pic(F_k) = Z F + Z E and the index formulas used for foliations on F_k."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional, Tuple


@dataclass(frozen=True)
class DivisorClass:
    """m F + n E on F_k, with E.E = -k, F.F = 0, F.E = 1."""

    k: int
    m: int
    n: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")

    @classmethod
    def fiber(cls, k: int) -> "DivisorClass":
        return cls(k, 1, 0)

    @classmethod
    def exceptional(cls, k: int) -> "DivisorClass":
        return cls(k, 0, 1)

    def _same(self, other: "DivisorClass"):
        if self.k != other.k:
            raise ValueError(f"classes on F_{self.k} and F_{other.k}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.k, self.m + other.m, self.n + other.n)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.k, self.m - other.m, self.n - other.n)

    def __rmul__(self, c: int) -> "DivisorClass":
        return DivisorClass(self.k, c * self.m, c * self.n)

    def dot(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def self_intersection(self) -> int:
        return intersect(self, self)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.m, self.n)


def intersect(C1: DivisorClass, C2: DivisorClass) -> int:
    C1._same(C2)
    return C1.m * C2.n + C2.m * C1.n - C1.k * C1.n * C2.n


def tangency(N: DivisorClass, C: DivisorClass, chi: int) -> int:
    """Tang(G, C) = N.C - chi(C) for a curve C not invariant by G."""
    return intersect(N, C) - chi


def vanishing_relation(N: DivisorClass, C: DivisorClass, C_self: int) -> int:
    """Z(G, C) = N.C - C^2 for an invariant curve C."""
    return intersect(N, C) - C_self


def baum_bott(N: DivisorClass) -> int:
    """Sum of Baum-Bott indices: N^2."""
    return N.self_intersection()


def normal_positive(a: int, b: int, k: int, m: int, n: int) -> bool:
    """N.C > 0 for N = aF + bE and C = mF + nE."""
    return intersect(DivisorClass(k, a, b), DivisorClass(k, m, n)) > 0


@dataclass(frozen=True)
class HirzebruchFoliation:
    k: int
    normal: DivisorClass
    origin: Optional[Tuple[int, int, int]] = None  # (d, r, e) on P(1,1,k)

    @property
    def riccati(self) -> bool:
        """Generically transverse to the ruling: N.F = 2."""
        return self.normal.n == 2


def exceptional_order(r: int, E_invariant: bool, k: int) -> int:
    return r - k if E_invariant else r


def pullback_bidegree(d: int, r: int, E_invariant: bool, k: int) -> DivisorClass:
    """Normal class d F + ((d - e)/k) E of the pullback of a foliation on P(1,1,k)."""
    e = exceptional_order(r, E_invariant, k)
    q, rem = divmod(d - e, k)
    if rem:
        raise ValueError(f"d - e = {d - e} is not divisible by k = {k}")
    return DivisorClass(k, d, q)


def pullback_foliation(d: int, r: int, E_invariant: bool, k: int) -> HirzebruchFoliation:
    N = pullback_bidegree(d, r, E_invariant, k)
    return HirzebruchFoliation(k, N, (d, r, exceptional_order(r, E_invariant, k)))


def riccati_by_order(d: int, e: int, k: int) -> bool:
    return e == d - 2 * k


@dataclass(frozen=True)
class ForcedInvariantCurve:
    branch: str          # "exceptional", "fibration" or "fiber"
    witnesses: Dict[str, int]

    def to_json(self) -> dict:
        return {"branch": self.branch, "witnesses": dict(self.witnesses)}


def hircurve_predicate(a: int, b: int, k: int) -> Optional[ForcedInvariantCurve]:
    """Which argument forces an invariant curve for every foliation of bidegree (a, b), or None."""
    N = DivisorClass(k, a, b)
    E, F = DivisorClass.exceptional(k), DivisorClass.fiber(k)
    tang_E = tangency(N, E, 2)
    tang_F = tangency(N, F, 2)
    if a < b * k + 2:
        return ForcedInvariantCurve("exceptional", {"tang_E": tang_E})
    if b <= 0:
        return ForcedInvariantCurve("fibration", {"tang_F": tang_F, "N.F": intersect(N, F)})
    if b <= 2:
        return ForcedInvariantCurve("fiber", {"N^2": baum_bott(N), "tang_F": tang_F})
    return None


def intersection_table(k: int, a: int, b: int) -> dict:
    N = DivisorClass(k, a, b)
    E, F = DivisorClass.exceptional(k), DivisorClass.fiber(k)
    return {"E.E": intersect(E, E), "F.F": intersect(F, F), "F.E": intersect(F, E),
            "N.E": intersect(N, E), "N.F": intersect(N, F), "N^2": baum_bott(N),
            "tang_E": tangency(N, E, 2), "tang_F": tangency(N, F, 2)}
