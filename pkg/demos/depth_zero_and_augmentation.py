"""Depth-zero valuations, one ordinary augmentation, and what changes.

Run: python demos/depth_zero_and_augmentation.py
"""

from fractions import Fraction

from mlvchain import X as x
from mlvchain import depth_zero, divides_probe, gauss

print("The Gauss valuation on Q[x] with p = 2 takes the minimum over coefficients.")
mu = gauss(2)
for f in (x**2 + 2 * x + 4, 2 * x + 4, x - 2):
    print(f"  mu({f}) = {mu.eval(f)}")

print()
print("omega_{0,1/2} over p = 7 gives x the value 1/2, so x^2 - 7 has value 1.")
w = depth_zero(7, 0, Fraction(1, 2))
for f in (x, x**2, x**2 - 7, x**3 - 7 * x):
    print(f"  w({f}) = {w.eval(f)}")

print()
print("Augment with the key x^2 - 7 at value 3/2.  Only polynomials that")
print("x^2 - 7 divides in the graded sense change value.")
nu = w.augment(x**2 - 7, Fraction(3, 2))
for f in (x + 1, x**2 - 7, x**4 - 49, x**2 + 7):
    flag = divides_probe(w, x**2 - 7, f)
    print(f"  {str(f):>12}: w = {w.eval(f)}, nu = {nu.eval(f)}, divisible: {flag}")
