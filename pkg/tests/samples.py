"""Seeded random members of the section spaces."""

import random

from wpfol.foliation import Foliation
from wpfol.forms import basis_fol
from wpfol.scalars import GaussRat


def random_member(w, d, rng):
    basis = basis_fol(w, d)
    omega = basis[0].scale(GaussRat(rng.randint(-5, 5), rng.randint(-5, 5)))
    for b in basis[1:]:
        omega = omega + b.scale(GaussRat(rng.randint(-5, 5), rng.randint(-5, 5)))
    return Foliation(omega)


def saturated_members(w, d, count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        F = random_member(w, d, rng)
        if not F.omega.is_zero() and F.saturated:
            out.append(F)
    return out
