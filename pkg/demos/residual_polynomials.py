"""Residual polynomials, key polynomials and lifts.

Run: python demos/residual_polynomials.py
"""

from fractions import Fraction

from mlvchain import X as x
from mlvchain import depth_zero, gauss, is_key, lift, normalizer, residual, residue_field
from mlvchain.ffield import FqPoly

w = depth_zero(7, 0, Fraction(1, 2))
print("Over omega_{0,1/2} with p = 7 the normalizer is", normalizer(w).expression())
r = residual(w, x**2 - 7)
print(f"R(x^2 - 7) = {r.R} over GF({r.field.order}), value {r.value}")
print("It has degree one, so x^2 - 7 is a key:", is_key(w, x**2 - 7))
print("x^2 - 2 is not:", is_key(w, x**2 - 2))

print()
mu = gauss(7).augment(x - 3, 1)
r = residual(mu, x**2 - 2)
print("Over [omega_{0,0}; x - 3, 1] the residual of x^2 - 2 is", r.R)
print("Its degree is 1 < 2, so x^2 - 2 is not a key there either.")

print()
print("Lifting goes the other way: an irreducible psi over the residue field")
print("gives a key whose residual is psi.")
mu = depth_zero(2, 0, Fraction(1, 3))
F = residue_field(mu)
psi = FqPoly(F, [1, 1])
chi = lift(mu, psi)
print(f"  lift(y + 1) over omega_{{0,1/3}}, p = 2: {chi}")
print(f"  residual back: {residual(mu, chi).R}, key: {is_key(mu, chi)}")
