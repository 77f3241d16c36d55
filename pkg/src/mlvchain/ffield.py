"""Finite fields F_{p^k} = F_p[t]/(modulus) and polynomials over them.

Fields are flat: every field is a single irreducible modulus over the prime
field, and towers are recorded with explicit :class:`FieldEmbedding` maps.
Factorization is squarefree decomposition, then distinct-degree, then
Cantor-Zassenhaus equal-degree splitting driven by a seeded RNG.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterator, Sequence

__all__ = [
    "FieldDesc",
    "FqElem",
    "FqPoly",
    "FieldEmbedding",
    "prime_field",
    "fq_factor",
    "fq_is_irreducible",
    "extend_field",
    "ZeroPolynomial",
    "NotIrreducible",
    "is_prime",
]


class ZeroPolynomial(ValueError):
    pass


class NotIrreducible(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- dense polynomials over F_p as tuples of ints (ascending, trimmed) -------


def _trim(a: list) -> tuple:
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _padd(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _psub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pmul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _pdivmod(a, b, p):
    if not b:
        raise ZeroDivisionError
    r = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(r) - 1 < db:
        return (), tuple(a)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db] * inv % p
        if c:
            q[k] = c
            for j in range(db + 1):
                r[k + j] = (r[k + j] - c * b[j]) % p
    return _trim(q), _trim(r[:db])


def _pmod(a, b, p):
    return _pdivmod(a, b, p)[1]


def _pgcd(a, b, p):
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = tuple(c * inv % p for c in a)
    return a


def _ppowmod(a, n, m, p):
    result = (1,)
    a = _pmod(a, m, p)
    while n:
        if n & 1:
            result = _pmod(_pmul(result, a, p), m, p)
        a = _pmod(_pmul(a, a, p), m, p)
        n >>= 1
    return result


def _prime_poly_irreducible(f: tuple, p: int) -> bool:
    """Rabin's test over the prime field."""
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = (0, 1)
    if _ppowmod(x, p**n, f, p) != x:
        return False
    for r in _prime_factors(n):
        h = _psub(_ppowmod(x, p ** (n // r), f, p), x, p)
        if len(_pgcd(f, h, p)) > 1:
            return False
    return True


# --- fields -------------------------------------------------------------------


@dataclass(frozen=True)
class FieldDesc:
    """F_{p^k} presented as F_p[t]/(modulus); ``modulus`` is ascending, monic."""

    p: int
    k: int
    modulus: tuple

    def __post_init__(self):
        object.__setattr__(self, "modulus", tuple(int(c) % self.p for c in self.modulus))
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if len(self.modulus) != self.k + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree k")
        if not _prime_poly_irreducible(self.modulus, self.p):
            raise NotIrreducible(f"modulus {self.modulus} is reducible mod {self.p}")

    @property
    def order(self) -> int:
        return self.p**self.k

    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise ValueError("element of another field")
            return value
        if isinstance(value, int):
            return FqElem(self, _trim([value % self.p]))
        rep = [int(c) % self.p for c in value]
        return FqElem(self, _pmod(_trim(rep), self.modulus, self.p))

    @cached_property
    def zero(self) -> "FqElem":
        return FqElem(self, ())

    @cached_property
    def one(self) -> "FqElem":
        return FqElem(self, (1,))

    @cached_property
    def gen(self) -> "FqElem":
        return self((0, 1))

    def elements(self) -> Iterator["FqElem"]:
        for digits in product(range(self.p), repeat=self.k):
            yield FqElem(self, _trim(list(digits)))

    def random_element(self, rng: random.Random) -> "FqElem":
        return FqElem(self, _trim([rng.randrange(self.p) for _ in range(self.k)]))

    def vector(self, a: "FqElem") -> list:
        """Coordinates of ``a`` in the power basis ``1, t, ..., t^(k-1)``."""
        return list(a.rep) + [0] * (self.k - len(a.rep))

    def __str__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"


def prime_field(p: int) -> FieldDesc:
    return FieldDesc(p, 1, (0, 1))


class FqElem:
    """Element of a :class:`FieldDesc`, stored as a reduced F_p-polynomial in t."""

    __slots__ = ("field", "rep")

    def __init__(self, field: FieldDesc, rep: tuple):
        self.field = field
        self.rep = rep

    def _other(self, other) -> "FqElem":
        if isinstance(other, FqElem):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("mixing elements of different fields")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FqElem):
            return NotImplemented
        return self.rep == other.rep and self.field == other.field

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.rep))

    def __bool__(self):
        return bool(self.rep)

    def is_zero(self) -> bool:
        return not self.rep

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FqElem(self.field, _padd(self.rep, other.rep, self.field.p))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-c) % p for c in self.rep))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FqElem(self.field, _psub(self.rep, other.rep, self.field.p))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        F = self.field
        if F.k == 1:
            if not self.rep or not other.rep:
                return F.zero
            return FqElem(F, _trim([self.rep[0] * other.rep[0] % F.p]))
        return FqElem(F, _pmod(_pmul(self.rep, other.rep, F.p), F.modulus, F.p))

    __rmul__ = __mul__

    def inverse(self) -> "FqElem":
        if not self.rep:
            raise ZeroDivisionError("inverse of zero in a finite field")
        F = self.field
        if F.k == 1:
            return FqElem(F, (pow(self.rep[0], -1, F.p),))
        # extended Euclid on (rep, modulus)
        p = F.p
        r0, r1 = F.modulus, self.rep
        s0, s1 = (), (1,)
        while r1:
            q, r = _pdivmod(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1, p), p)
        inv = pow(r0[0], -1, p)
        return FqElem(F, tuple(c * inv % p for c in s0))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def balanced_int(self) -> int:
        """Prime-field element as an integer in (-p/2, p/2]."""
        if self.field.k != 1 and len(self.rep) > 1:
            raise ValueError("not in the prime field")
        c = self.rep[0] if self.rep else 0
        p = self.field.p
        return c - p if c > p // 2 else c

    def __repr__(self):
        return f"FqElem({self})"

    def __str__(self):
        if not self.rep:
            return "0"
        if self.field.k == 1:
            return str(self.rep[0])
        terms = []
        for i in range(len(self.rep) - 1, -1, -1):
            c = self.rep[i]
            if not c:
                continue
            mon = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if not mon:
                terms.append(str(c))
            else:
                terms.append(mon if c == 1 else f"{c}*{mon}")
        return " + ".join(terms)


# --- polynomials over F_q -------------------------------------------------------


class FqPoly:
    """Univariate polynomial in ``y`` over a finite field, ascending coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDesc, coeffs: Sequence = ()):
        c = [field(a) for a in coeffs]
        while c and c[-1].is_zero():
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, field, coeffs):
        obj = object.__new__(cls)
        obj.field = field
        c = list(coeffs)
        while c and c[-1].is_zero():
            c.pop()
        obj.coeffs = tuple(c)
        return obj

    @classmethod
    def y(cls, field: FieldDesc) -> "FqPoly":
        return cls._raw(field, (field.zero, field.one))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def lc(self) -> FqElem:
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if not isinstance(other, FqPoly):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, tuple(c.rep for c in self.coeffs)))

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, FqPoly):
            return other
        if isinstance(other, (int, FqElem)):
            return FqPoly._raw(self.field, (self.field(other),))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return FqPoly._raw(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FqPoly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return FqPoly._raw(self.field, ())
        out = [self.field.zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, z in enumerate(b):
                out[i + j] = out[i + j] + x * z
        return FqPoly._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = FqPoly._raw(self.field, (self.field.one,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return FqPoly._raw(self.field, ()), self
        inv = other.coeffs[-1].inverse()
        q = [self.field.zero] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            if c.is_zero():
                continue
            q[k] = c
            for j in range(db + 1):
                r[k + j] = r[k + j] - c * other.coeffs[j]
        return FqPoly._raw(self.field, q), FqPoly._raw(self.field, r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, a: FqElem) -> FqElem:
        acc = a.field.zero
        for c in reversed(self.coeffs):
            acc = acc * a + c
        return acc

    def monic(self) -> "FqPoly":
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no monic form")
        inv = self.coeffs[-1].inverse()
        return FqPoly._raw(self.field, [c * inv for c in self.coeffs])

    def derivative(self) -> "FqPoly":
        return FqPoly._raw(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def gcd(self, other: "FqPoly") -> "FqPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def powmod(self, n: int, m: "FqPoly") -> "FqPoly":
        result = FqPoly._raw(self.field, (self.field.one,))
        base = self % m
        while n:
            if n & 1:
                result = (result * base) % m
            base = (base * base) % m
            n >>= 1
        return result

    def sort_key(self) -> tuple:
        return (self.degree, tuple(tuple(c.rep) for c in self.coeffs))

    def __repr__(self):
        return f"FqPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mon = "" if i == 0 else ("y" if i == 1 else f"y^{i}")
            cs = str(c)
            if len(c.rep) > 1:
                cs = f"({cs})"
            if not mon:
                terms.append(cs)
            elif c == self.field.one:
                terms.append(mon)
            else:
                terms.append(f"{cs}*{mon}")
        return " + ".join(terms)


def _pth_root(f: FqPoly) -> FqPoly:
    """For f with f' = 0, the polynomial g with g^p = f."""
    F = f.field
    p, q = F.p, F.order
    root = q // p  # a -> a^(q/p) inverts Frobenius on F_q
    coeffs = [f.coeffs[i] ** root for i in range(0, len(f.coeffs), p)]
    return FqPoly._raw(F, coeffs)


def _squarefree_decomposition(f: FqPoly) -> list:
    """Pairs (g_i, i) with f = prod g_i^i, g_i squarefree, f monic."""
    out = []
    F = f.field
    p = F.p
    one = FqPoly._raw(F, (F.one,))

    def rec(f, mult):
        if f.degree < 1:
            return
        d = f.derivative()
        if d.is_zero():
            rec(_pth_root(f), mult * p)
            return
        c = f.gcd(d)
        w = f // c
        i = 1
        while w.degree > 0:
            y = w.gcd(c)
            z = w // y
            if z.degree > 0:
                out.append((z.monic(), i * mult))
            i += 1
            w = y
            c = c // y
        if c.degree > 0:
            rec(_pth_root(c.monic()), mult * p)

    rec(f, 1)
    del one
    return out


def _distinct_degree(f: FqPoly) -> list:
    """Pairs (g_d, d): g_d is the product of the degree-d irreducible factors."""
    F = f.field
    q = F.order
    out = []
    y = FqPoly.y(F)
    h = y
    d = 0
    f_rem = f
    while f_rem.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, f_rem)
        g = f_rem.gcd(h - y)
        if g.degree > 0:
            out.append((g, d))
            f_rem = f_rem // g
            h = h % f_rem
    if f_rem.degree > 0:
        out.append((f_rem.monic(), f_rem.degree))
    return out


def _equal_degree(f: FqPoly, d: int, rng: random.Random) -> list:
    F = f.field
    if f.degree == d:
        return [f.monic()]
    q = F.order
    n = f.degree
    while True:
        a = FqPoly._raw(F, [F.random_element(rng) for _ in range(n)])
        if a.degree < 1:
            continue
        g = a.gcd(f)
        if 0 < g.degree < n:
            break
        if F.p == 2:
            # trace map a + a^2 + ... + a^(2^(k d - 1))
            t = a % f
            acc = t
            for _ in range(F.k * d - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.powmod((q**d - 1) // 2, f) - FqPoly._raw(F, (F.one,))
        g = b.gcd(f)
        if 0 < g.degree < n:
            break
    return _equal_degree(g, d, rng) + _equal_degree(f // g, d, rng)


def fq_factor(f: FqPoly, seed: int = 0) -> list:
    """Complete factorization into monic irreducibles with multiplicities.

    Returns ``[(factor, multiplicity), ...]`` sorted by degree and then by
    coefficients; the leading coefficient of ``f`` is dropped.
    """
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    if f.degree < 1:
        return []
    rng = random.Random(seed)
    found = {}
    for g, mult in _squarefree_decomposition(f.monic()):
        for h, d in _distinct_degree(g):
            for irr in _equal_degree(h, d, rng):
                found[irr] = found.get(irr, 0) + mult
    return sorted(found.items(), key=lambda item: item[0].sort_key())


def fq_is_irreducible(f: FqPoly) -> bool:
    """Rabin's irreducibility test over F_q."""
    if f.degree < 1:
        return False
    if f.degree == 1:
        return True
    F = f.field
    q = F.order
    n = f.degree
    g = f.monic()
    y = FqPoly.y(F)
    if y.powmod(q**n, g) != y:
        return False
    for r in _prime_factors(n):
        h = y.powmod(q ** (n // r), g) - y
        if g.gcd(h).degree > 0:
            return False
    return True


@dataclass(frozen=True)
class FieldEmbedding:
    """Ring homomorphism ``source -> target`` fixed by the image of ``t``."""

    source: FieldDesc
    target: FieldDesc
    image: FqElem

    def __post_init__(self):
        if self.target.k % self.source.k:
            raise ValueError("degree of source must divide degree of target")
        mod = FqPoly(self.target, self.source.modulus)
        if not mod(self.image).is_zero():
            raise ValueError("image of the generator is not a root of the source modulus")

    def __call__(self, a: FqElem) -> FqElem:
        if self.source == self.target and self.image == self.target.gen:
            return a
        acc = self.target.zero
        for c in reversed(a.rep):
            acc = acc * self.image + c
        return acc

    def poly(self, f: FqPoly) -> FqPoly:
        return FqPoly._raw(self.target, [self(c) for c in f.coeffs])

    @classmethod
    def identity(cls, F: FieldDesc) -> "FieldEmbedding":
        return cls(F, F, F.gen)


def _smallest_irreducible(p: int, n: int) -> tuple:
    for digits in product(range(p), repeat=n):
        cand = tuple(reversed(digits)) + (1,)
        if cand[0] == 0 and n > 1:
            continue
        if _prime_poly_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")


def extend_field(base: FieldDesc, psi: FqPoly, seed: int = 0):
    """Adjoin a root of the irreducible ``psi`` to ``base``.

    Returns ``(field, embedding, root)``: a flat field of degree
    ``base.k * deg(psi)``, the embedding of ``base`` into it and a root of
    ``psi`` there.  Linear ``psi`` gives back ``base`` with the identity map.
    """
    if psi.field != base:
        raise ValueError("psi must have coefficients in base")
    if psi.degree < 1 or not fq_is_irreducible(psi):
        raise NotIrreducible(f"{psi} is not irreducible over {base}")
    psi = psi.monic()
    d = psi.degree
    if d == 1:
        return base, FieldEmbedding.identity(base), -psi.coeffs[0]
    if base.k == 1:
        target = FieldDesc(base.p, d, tuple(c.rep[0] if c.rep else 0 for c in psi.coeffs))
        emb = FieldEmbedding(base, target, target(0))
        return target, emb, target.gen
    target = FieldDesc(base.p, base.k * d, _smallest_irreducible(base.p, base.k * d))
    base_mod = FqPoly(target, base.modulus)
    t_image = fq_factor(base_mod, seed)[0][0]
    image = -t_image.coeffs[0]
    emb = FieldEmbedding(base, target, image)
    mapped = emb.poly(psi)
    linear = [g for g, _ in fq_factor(mapped, seed) if g.degree == 1]
    root = -linear[0].coeffs[0]
    return target, emb, root
