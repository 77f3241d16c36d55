"""All extensions of ord_p to a number field, found by the MacLane search.

Run: python demos/extensions_of_ord_p.py
"""

from mlvchain import X as x
from mlvchain.extend import ApproximantOnly, exact_chain, extensions

cases = [
    (x**2 + 1, 2),
    (x**2 + 1, 5),
    (x**2 + 1, 7),
    (x**2 - 7, 7),
    (x**3 - 2, 2),
    (x**4 + x**2 + 7, 7),
]
for F, p in cases:
    rep = extensions(F, p)
    print(f"{F} at p = {p}: (e, f) = {rep.ef}, sum e f = {rep.sum_ef}")
    for leaf in rep.leaves:
        print(f"    approximant {leaf.approximant}")
        print(f"    slopes {[str(s) for s in leaf.slopes]}, key {leaf.key}")

print()
print("x^2 - 2 splits over Q_7.  No ordinary chain makes it a key; the leaf")
print("instead carries the digit family of the root it isolates.")
for leaf in extensions(x**2 - 2, 7).leaves:
    out = exact_chain(leaf)
    assert isinstance(out, ApproximantOnly)
    print("  ", [str(out.family.term(i)[0]) for i in (1, 2, 3, 4)])
