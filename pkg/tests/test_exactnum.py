from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlvchain.exactnum import (
    INF,
    NotMonic,
    NotNested,
    RationalPoly,
    ValueGroup,
    X,
    group_index,
    group_join,
    padic_val,
    phi_expand,
    value_min,
)

Z = ValueGroup(1)


def rationals(max_den=12):
    return st.builds(Fraction, st.integers(-40, 40), st.integers(1, max_den))


def polys(max_deg=12, monic=False):
    coeffs = st.lists(rationals(), min_size=1, max_size=max_deg + 1)
    if monic:
        return coeffs.map(lambda c: RationalPoly(c + [1]))
    return coeffs.map(RationalPoly)


def _reassemble(parts, phi):
    out = RationalPoly(())
    for s, a in enumerate(parts):
        out = out + a * phi**s
    return out


def _naive_gcd(a: Fraction, b: Fraction) -> Fraction:
    # generator of aZ + bZ over a common denominator
    den = a.denominator * b.denominator
    return Fraction(gcd(int(a * den), int(b * den)), den)


def test_value_min_examples():
    assert value_min(Fraction(1, 2), INF) == Fraction(1, 2)
    assert value_min(INF, INF) is INF
    assert value_min(Fraction(2, 3), Fraction(3, 4)) == Fraction(2, 3)


def test_infinity_arithmetic():
    assert INF + 3 is INF and 3 + INF is INF and 2 * INF is INF
    assert INF > Fraction(10**9) and not INF < 5


def test_group_join_examples():
    assert group_join(Z, Fraction(1, 2)) == ValueGroup(Fraction(1, 2))
    assert group_join(Z, INF) == Z
    assert group_join(ValueGroup(Fraction(1, 2)), Fraction(1, 3)) == ValueGroup(_naive_gcd(Fraction(1, 2), Fraction(1, 3)))
    assert group_join(ValueGroup(Fraction(1, 2)), Fraction(1, 3)) == ValueGroup(Fraction(1, 6))


def test_group_index_examples():
    assert group_index(Z, ValueGroup(Fraction(1, 2))) == 2
    assert group_index(Z, Z) == 1
    G, H = ValueGroup(Fraction(1, 2)), ValueGroup(Fraction(1, 6))
    assert group_index(G, H) == G.generator / H.generator == 3
    with pytest.raises(NotNested):
        group_index(ValueGroup(Fraction(1, 2)), Z)


def test_phi_expand_examples():
    f = X**3 + 2 * X + 1
    phi = X**2 + 1
    parts = phi_expand(f, phi)
    assert parts == [X + 1, X]
    assert _reassemble(parts, phi) == f
    assert phi_expand(RationalPoly.const(5), phi) == [RationalPoly.const(5)]
    assert phi_expand(phi, phi) == [RationalPoly(()), RationalPoly.const(1)]
    with pytest.raises(NotMonic):
        phi_expand(f, 2 * X)


def test_padic_val():
    assert padic_val(Fraction(49, 3), 7) == 2
    assert padic_val(Fraction(3, 14), 7) == -1
    assert padic_val(0, 7) is INF


def test_poly_arithmetic_and_printing():
    f = X**2 - 7
    assert str(f) == "x^2 - 7"
    assert str(Fraction(1, 6) * X - 1) == "1/6*x - 1"
    q, r = divmod(X**3 + 1, X + 1)
    assert q == X**2 - X + 1 and r == 0
    assert (X**2 - 1).gcd(X**2 - 2 * X + 1) == X - 1
    assert f.taylor_shift(3) == RationalPoly([2, 6, 1])


@settings(max_examples=150, deadline=None)
@given(polys(12), polys(5, monic=True))
def test_phi_expand_reassembles(f, phi):
    if phi.degree < 1:
        phi = phi + X
        phi = phi.monic()
    parts = phi_expand(f, phi)
    assert all(a.degree < phi.degree for a in parts)
    assert _reassemble(parts, phi) == f


@settings(max_examples=200, deadline=None)
@given(rationals(), rationals(), st.builds(Fraction, st.integers(1, 20), st.integers(1, 20)))
def test_group_join_laws(a, b, g):
    G = ValueGroup(g)
    assert group_join(group_join(G, a), a) == group_join(G, a)
    assert group_join(group_join(G, a), b) == group_join(group_join(G, b), a)
    # the index of G in <G, a> is the order of a modulo G
    n = group_index(G, group_join(G, a))
    assert a * n in G
    assert all(a * k not in G for k in range(1, n))


@settings(max_examples=150, deadline=None)
@given(polys(6), polys(6))
def test_divmod_identity(f, g):
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f and r.degree < g.degree
