"""Random chain and polynomial generators shared by the test modules."""

import random
from fractions import Fraction

from mlvchain.exactnum import RationalPoly
from mlvchain.ffield import FqPoly, fq_is_irreducible
from mlvchain.keypoly import lift, residue_field
from mlvchain.valuation import depth_zero

PRIMES = (2, 3, 5, 7)


def random_poly(rng: random.Random, deg: int, p: int, bound: int = 30) -> RationalPoly:
    coeffs = [rng.randint(-bound, bound) * p ** rng.randint(-1, 2) for _ in range(deg + 1)]
    if coeffs[-1] == 0:
        coeffs[-1] = 1
    return RationalPoly([Fraction(c) for c in coeffs])


def random_irreducible(rng: random.Random, field, max_deg: int) -> FqPoly:
    while True:
        d = rng.randint(1, max_deg)
        g = FqPoly(field, [field.random_element(rng) for _ in range(d)] + [field.one])
        if g.coeffs[0].is_zero():
            continue
        if fq_is_irreducible(g):
            return g


def random_chain(rng: random.Random, p=None, depth=None, max_psi_deg: int = 2, max_degree: int = 8):
    """A chain built by lifting random residual irreducibles; steps may repeat a degree."""
    p = p or rng.choice(PRIMES)
    depth = rng.randint(0, 3) if depth is None else depth
    mu = depth_zero(p, rng.randint(-5, 5), Fraction(rng.randint(0, 6), rng.randint(1, 3)))
    for _ in range(depth):
        field = residue_field(mu)
        psi = random_irreducible(rng, field, max_psi_deg)
        chi = lift(mu, psi)
        if chi.degree > max_degree:
            break
        mu = mu.augment(chi, mu.eval(chi) + Fraction(rng.randint(1, 6), rng.randint(1, 3)))
    return mu
