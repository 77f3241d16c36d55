"""Presentations of the graded algebra of a chain.

Run: python demos/graded_algebra.py
"""

import json
from fractions import Fraction

from mlvchain import X as x
from mlvchain import INF, depth_zero, gauss
from mlvchain.chain import graded_presentation, validate

chains = {
    "x^2 - 7 over p = 7": depth_zero(7, 0, Fraction(1, 2)).augment(x**2 - 7, INF),
    "x^2 + x + 1 over p = 2": gauss(2).augment(x**2 + x + 1, INF),
    "omega_{0,1/3} over p = 2": depth_zero(2, 0, Fraction(1, 3)),
    "two steps over p = 2": depth_zero(2, 0, Fraction(1, 2)).augment(x**2 - 2, Fraction(3, 2)),
}
for name, mu in chains.items():
    print(name)
    print(json.dumps(graded_presentation(validate(mu)).as_dict(), indent=2))
    print()
