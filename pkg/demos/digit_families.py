"""Families built from p-adic digits, and the limit augmentation they give.

Run: python demos/digit_families.py
"""

from fractions import Fraction

from mlvchain import X as x
from mlvchain import INF, gauss
from mlvchain.chain import defect_ledger, invariants, validate
from mlvchain.limitfam import classify, digit_stream_family, hensel_digits, stable_value

print("theta = -1/6 over p = 7 has every digit equal to 1.")
fam = digit_stream_family(7, theta=Fraction(-1, 6))
for i in (1, 2, 3):
    chi, beta = fam.term(i)
    print(f"  rho_{i} = [omega_00; {chi}, {beta}]")
print("x + 1/6 never stabilizes:", stable_value(fam, x + Fraction(1, 6), 6))
print("so the family is", classify(fam, [x + Fraction(1, 6)]).kind)

print()
print("The square root of 2 congruent to 3 mod 7 has digits 3, 1, 2, ...")
fam = digit_stream_family(7, digits=hensel_digits(x**2 - 2, 7, 3), key="sqrt2")
for f in (x, x - 3, x**2 - 2):
    print(f"  {str(f):>8}: {stable_value(fam, f, 8)}")
verdict = classify(fam, [x, x - 3, x**2 - 2])
print("Every linear polynomial stabilizes while x^2 - 2 does not:", verdict.kind)

chain = validate(gauss(7).limit_augment(fam, verdict.phi, INF))
inv = invariants(chain)
print()
print("The limit augmentation [A; x^2 - 2, oo] is a chain of depth", chain.depth)
print(f"  m = {inv.m}, e = {inv.e}, f = {inv.f}, d = {[str(d) for d in inv.d]}")
e, f, d = defect_ledger(chain)
print(f"  (e, f, d) = ({e}, {f}, {d})")
print("The degree jumps from 1 to 2 across the step with e = f = 1, so d = 2.")
