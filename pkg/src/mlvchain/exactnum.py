"""Exact rationals, the value semigroup Q u {oo}, cyclic value groups and
polynomials over Q.

Everything here is exact; floats never appear.  Rationals are plain
:class:`fractions.Fraction` objects and the extended value set adds a single
:data:`INF` element that is larger than every rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "Fraction",
    "INF",
    "Infinity",
    "Value",
    "value_min",
    "as_value",
    "padic_val",
    "padic_residue",
    "ValueGroup",
    "NotNested",
    "group_join",
    "group_index",
    "RationalPoly",
    "NotMonic",
    "X",
    "phi_expand",
    "rational_gcd",
]


class Infinity:
    """The top element of the value semigroup."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())

    def __hash__(self):
        return hash("mlvchain.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        # only positive integer scalings are meaningful (s * gamma with s >= 1)
        if isinstance(other, (int, Fraction)) and other > 0:
            return self
        return NotImplemented

    __rmul__ = __mul__


INF = Infinity()

Value = Union[Fraction, Infinity]


def as_value(x) -> Value:
    """Coerce ints, strings like ``"3/4"`` or ``"inf"`` and Fractions to a Value."""
    if x is INF:
        return INF
    if isinstance(x, str) and x.strip().lower() in ("inf", "oo", "infinity"):
        return INF
    return Fraction(x)


def value_min(a: Value, b: Value) -> Value:
    return b if b < a else a


def padic_val(x, p: int) -> Value:
    """ord_p of a rational; ``INF`` for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    n, d = x.numerator, x.denominator
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return Fraction(v)


def padic_residue(x, p: int) -> int:
    """Image in F_p of a p-adic unit or p-integral rational."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def rational_gcd(a: Fraction, b: Fraction) -> Fraction:
    """Positive generator of the subgroup of Q generated by ``a`` and ``b``."""
    a, b = Fraction(a), Fraction(b)
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    num = gcd(a.numerator * b.denominator, b.numerator * a.denominator)
    return Fraction(num, a.denominator * b.denominator)


class NotNested(ValueError):
    pass


@dataclass(frozen=True)
class ValueGroup:
    """The cyclic subgroup ``generator * Z`` of Q."""

    generator: Fraction = Fraction(1)

    def __post_init__(self):
        g = Fraction(self.generator)
        if g <= 0:
            raise ValueError("generator must be positive")
        object.__setattr__(self, "generator", g)

    def __contains__(self, x) -> bool:
        if x is INF:
            return False
        return (Fraction(x) / self.generator).denominator == 1

    def issubgroup(self, other: "ValueGroup") -> bool:
        return (self.generator / other.generator).denominator == 1

    def join(self, gamma: Value) -> "ValueGroup":
        return group_join(self, gamma)

    def __str__(self):
        g = self.generator
        return "Z" if g == 1 else f"({g})Z"


def group_join(G: ValueGroup, gamma: Value) -> ValueGroup:
    if gamma is INF:
        return G
    return ValueGroup(rational_gcd(G.generator, Fraction(gamma)))


def group_index(inner: ValueGroup, outer: ValueGroup) -> int:
    """Index ``(outer : inner)``; raises :class:`NotNested` unless inner <= outer."""
    if not inner.issubgroup(outer):
        raise NotNested(f"{inner} is not contained in {outer}")
    q = inner.generator / outer.generator
    return q.numerator


class NotMonic(ValueError):
    pass


def _trim(coeffs: Iterable) -> tuple:
    c = [Fraction(a) for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class RationalPoly:
    """Dense univariate polynomial in ``x`` with exact rational coefficients.

    Coefficients are stored in ascending order with trailing zeros removed,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Sequence = ()):
        if isinstance(coeffs, RationalPoly):
            coeffs = coeffs.coeffs
        elif isinstance(coeffs, (int, Fraction)):
            coeffs = (coeffs,)
        self.coeffs = _trim(coeffs)
        self._hash = None

    @classmethod
    def _raw(cls, coeffs: tuple) -> "RationalPoly":
        obj = object.__new__(cls)
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "RationalPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, n: int, c=1) -> "RationalPoly":
        return cls([0] * n + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    @staticmethod
    def _coerce(other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalPoly((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        while out and out[-1] == 0:
            out.pop()
        return RationalPoly._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return RationalPoly._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RationalPoly._raw(())
            return RationalPoly._raw(tuple(c * other for c in self.coeffs))
        if not isinstance(other, RationalPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPoly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return RationalPoly._raw(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = RationalPoly._raw((Fraction(1),))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree
        lb = other.coeffs[-1]
        if len(r) - 1 < db:
            return RationalPoly._raw(()), self
        q = [Fraction(0)] * (len(r) - db)
        bc = other.coeffs
        monic = lb == 1
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if c == 0:
                continue
            if not monic:
                c = c / lb
            q[k] = c
            for j in range(db + 1):
                r[k + j] -= c * bc[j]
        r = r[:db]
        while r and r[-1] == 0:
            r.pop()
        return RationalPoly(q), RationalPoly._raw(tuple(r))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            c = Fraction(c)
            return RationalPoly._raw(tuple(a / c for a in self.coeffs))
        return NotImplemented

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPoly":
        return RationalPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "RationalPoly":
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self / self.coeffs[-1]

    def taylor_shift(self, a) -> "RationalPoly":
        """Coefficients of ``f(x + a)``, i.e. the (x - a)-expansion of ``f``."""
        a = Fraction(a)
        c = list(self.coeffs)
        n = len(c)
        if a == 0 or n < 2:
            return self
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += a * c[j + 1]
        return RationalPoly._raw(tuple(c))

    def gcd(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def __repr__(self):
        return f"RationalPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mon = "x" if i == 1 else f"x^{i}"
                body = mon if a == 1 else f"{a}*{mon}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


X = RationalPoly((0, 1))


def phi_expand(f: RationalPoly, phi: RationalPoly) -> list:
    """Canonical phi-adic expansion ``f = sum a_s phi^s`` with ``deg a_s < deg phi``.

    Returns ``[a_0, ..., a_k]`` (``[]`` for ``f = 0``).
    """
    if not phi.is_monic() or phi.degree < 1:
        raise NotMonic("expansion pivot must be monic of positive degree")
    if phi.degree == 1:
        shifted = f.taylor_shift(-phi.coeffs[0])
        return [RationalPoly._raw((c,)) if c != 0 else RationalPoly._raw(()) for c in shifted.coeffs]
    out = []
    q = f
    while q:
        q, r = divmod(q, phi)
        out.append(r)
    return out
