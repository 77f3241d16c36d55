"""Residual polynomials, normalizers, key-polynomial tests, Newton polygons
and lifting of residual irreducibles.

The residue fields are built level by level along the compressed chain.
Level ``n`` knows its key ``phi_n``, value ``gamma_n``, relative index
``e_n`` and the field ``kappa_n``; it can compute the residue in ``kappa_n``
of any degree-zero unit ``prod in(g_k)^{t_k}`` with ``deg g_k < m_n`` by
splitting each ``g_k`` at the level below:

    in g = in(a_{s0}) in(chi)^{s0} R(xi)

so a product of such terms becomes a unit one level down, times a power of
``xi`` and the values ``R_k(z)`` at the image ``z`` of ``xi``.  At the
bottom the units are rational constants and the residue is taken mod p.
A limit level delegates to a member ``rho_i`` of its family at which every
polynomial involved is already stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product

from .exactnum import (
    INF,
    RationalPoly,
    Value,
    ValueGroup,
    group_index,
    group_join,
    padic_residue,
    padic_val,
    phi_expand,
)
from .ffield import FieldDesc, FieldEmbedding, FqElem, FqPoly, ZeroPolynomial, extend_field, fq_is_irreducible, prime_field
from .valuation import InductiveValuation, NotResiduallyTranscendental, UnstableCoefficient, equiv_values

__all__ = [
    "ResidualData",
    "Normalizer",
    "NewtonPolygon",
    "ImproperChain",
    "PsiIsY",
    "normalizer",
    "residual",
    "residue_field",
    "residue_lift",
    "is_key",
    "equiv",
    "lift",
    "newton_polygon",
]


class ImproperChain(ValueError):
    """A chain key is divisible by the previous key in the graded sense."""


class PsiIsY(ValueError):
    pass


@dataclass(frozen=True)
class ResidualData:
    value: Value
    s0: int
    R: FqPoly
    leading_unit: FqElem

    @property
    def field(self) -> FieldDesc:
        return self.R.field

    @property
    def raw(self) -> FqPoly:
        """The residual polynomial with constant term 1, before monicization."""
        return self.R * self.leading_unit


@dataclass(frozen=True)
class Normalizer:
    """The monomial ``c * p^k * prod phi_i^{t_i}``."""

    p: int
    p_exponent: int
    exponents: tuple
    keys: tuple
    constant: Fraction = Fraction(1)

    @property
    def poly(self) -> RationalPoly:
        out = RationalPoly.const(self.constant * Fraction(self.p) ** self.p_exponent)
        for phi, t in zip(self.keys, self.exponents):
            if t:
                out = out * phi**t
        return out

    def expression(self, names=None) -> str:
        """Monomial in ``p`` and the generators ``x0, x1, ...``."""
        names = names or [f"x{i}" for i in range(len(self.keys))]
        parts = []
        if self.constant != 1:
            parts.append(str(self.constant))
        if self.p_exponent:
            parts.append("p" if self.p_exponent == 1 else f"p^{self.p_exponent}")
        for name, t in zip(names, self.exponents):
            if t:
                parts.append(name if t == 1 else f"{name}^{t}")
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class _Initial:
    value: Value
    s0: int
    lead: RationalPoly
    coeffs: tuple  # un-normalized R, constant term 1


def _horner(coeffs, z, emb=None):
    acc = z.field.zero
    for c in reversed(coeffs):
        acc = acc * z + (emb(c) if emb is not None else c)
    return acc


class _Level:
    """One node of a compressed chain together with its residue field."""

    def __init__(self, mu: InductiveValuation, prev, family=None, seed: int = 0):
        self.mu = mu
        self.prev = prev
        self.family = family
        self.seed = seed
        self.p = mu.p
        self.key = mu.last_key
        self.gamma = mu.last_gamma
        self.m = self.key.degree
        self.index = 0 if prev is None else prev.index + 1
        self.prev_group = ValueGroup(1) if prev is None else prev.group
        self.group = group_join(self.prev_group, self.gamma)
        self.e = group_index(self.prev_group, self.group)
        self._initials = {}
        self._subs = {}

    @property
    def ancestors(self) -> list:
        out, lv = [], self.prev
        while lv is not None:
            out.append(lv)
            lv = lv.prev
        return out

    # -- residue field -----------------------------------------------------------

    @cached_property
    def psi(self):
        """Minimal polynomial over the previous field of the image of its xi."""
        if self.prev is None or self.family is not None:
            return None
        it = self.prev.initial(self.key)
        if it.s0 != 0:
            raise ImproperChain(f"key {self.key} is divisible by the previous key")
        return FqPoly._raw(self.prev.field, it.coeffs).monic()

    @cached_property
    def _tower(self):
        if self.prev is None:
            return prime_field(self.p), None, None
        if self.family is not None:
            F = self.prev.field
            return F, FieldEmbedding.identity(F), None
        return extend_field(self.prev.field, self.psi, self.seed)

    @property
    def field(self) -> FieldDesc:
        return self._tower[0]

    @property
    def emb(self):
        return self._tower[1]

    @property
    def z(self):
        return self._tower[2]

    # -- normalizer ----------------------------------------------------------------

    @cached_property
    def normalizer(self) -> Normalizer:
        if self.gamma is INF:
            raise NotResiduallyTranscendental("last value is infinite")
        T = self.e * self.gamma
        anc = self.ancestors
        exps = [0] * len(anc)
        for A in anc:
            for t in range(A.e):
                if (T - t * A.gamma) in A.prev_group:
                    break
            else:
                raise AssertionError("normalizer digit not found")
            exps[A.index] = t
            T -= t * A.gamma
        if T.denominator != 1:
            raise AssertionError("normalizer leaves a non-integral remainder")
        keys = tuple(lv.key for lv in reversed(anc))
        u = Normalizer(self.p, int(T), tuple(exps), keys)
        poly = u.poly
        if poly.degree >= self.m or self.mu.eval(poly) != self.e * self.gamma:
            raise AssertionError("normalizer postcondition failed")
        return u

    @cached_property
    def u(self) -> RationalPoly:
        return self.normalizer.poly

    # -- initial terms ---------------------------------------------------------------

    def coeff_value(self, a: RationalPoly) -> Value:
        if self.prev is None:
            return padic_val(a.coeffs[0], self.p)
        if self.family is None:
            return self.prev.mu.eval(a)
        return self.mu.eval(a)

    def initial(self, f: RationalPoly) -> _Initial:
        """``(value, s0, a_{s0}, R)`` for the initial term of ``f`` at this level."""
        if f in self._initials:
            return self._initials[f]
        if f.is_zero():
            raise ZeroPolynomial("residual of zero")
        if self.gamma is INF:
            raise NotResiduallyTranscendental("last value is infinite")
        exp = phi_expand(f, self.key)
        vals = {}
        for s, a in enumerate(exp):
            if a:
                v = self.coeff_value(a)
                vals[s] = v + s * self.gamma if s else v
        vmin = min(vals.values())
        S = sorted(s for s, v in vals.items() if v == vmin)
        s0 = S[0]
        if any((s - s0) % self.e for s in S):
            raise AssertionError("support of the residual polynomial is not in s0 + eZ")
        lead = exp[s0]
        top = (S[-1] - s0) // self.e
        F = self.field
        coeffs = [F.one]
        for j in range(1, top + 1):
            s = s0 + j * self.e
            if s in S:
                coeffs.append(self.unit_residue([(exp[s], 1), (lead, -1), (self.u, j)]))
            else:
                coeffs.append(F.zero)
        out = _Initial(vmin, s0, lead, tuple(coeffs))
        self._initials[f] = out
        return out

    # -- residues of degree-zero units --------------------------------------------------

    def unit_residue(self, units) -> FqElem:
        """Residue of ``prod in(g)^t`` for ``(g, t)`` in ``units``; total value must be 0."""
        merged = {}
        for g, t in units:
            if t:
                merged[g] = merged.get(g, 0) + t
        merged = {g: t for g, t in merged.items() if t}
        if self.prev is None:
            c = Fraction(1)
            for g, t in merged.items():
                if g.degree != 0:
                    raise AssertionError("non-constant unit at the bottom level")
                c *= g.coeffs[0] ** t
            if padic_val(c, self.p) != 0:
                raise AssertionError("unit of nonzero value")
            return self.field(padic_residue(c, self.p))
        P, z, emb = self._descend(list(merged))
        acc = self.field.one
        S = 0
        bracket = []
        for g, t in merged.items():
            it = P.initial(g)
            S += t * it.s0
            bracket.append((it.lead, t))
            if len(it.coeffs) > 1:
                acc = acc * _horner(it.coeffs, z, emb) ** t
        q, rem = divmod(S, P.e)
        if rem:
            raise AssertionError("unit of nonzero value")
        if q:
            bracket.append((P.u, q))
        return emb(P.unit_residue(bracket)) * z**q * acc

    def _descend(self, polys):
        if self.family is None:
            return self.prev, self.z, self.emb
        fam = self.family
        for i in range(1, fam.budget + 1):
            if all(fam.rho(i).eval(g) == fam.rho(i + 1).eval(g) for g in polys):
                return self._substitute(i)
        raise UnstableCoefficient("no family member stabilizes the requested units")

    def _substitute(self, i: int):
        if i not in self._subs:
            fam = self.family
            P = _Level(fam.rho(i), self.prev, seed=self.seed)
            nxt = P.initial(fam.term(i + 1)[0])
            if nxt.s0 != 0 or len(nxt.coeffs) != 2:
                raise AssertionError("family members are not consecutive augmentations")
            c0, c1 = nxt.coeffs
            z = -(c0 / c1)
            self._subs[i] = (P, z, FieldEmbedding.identity(P.field))
        return self._subs[i]

    # -- lifting residues ----------------------------------------------------------------

    @cached_property
    def _residue_basis(self):
        """Value-zero monomials whose residues form an F_p-basis of the field."""
        F = self.field
        p = self.p
        anc = list(reversed(self.ancestors))
        bounds = []
        for i, A in enumerate(anc):
            nxt = anc[i + 1].m if i + 1 < len(anc) else self.m
            bounds.append(nxt // A.m)
        cands = []
        for ts in product(*[range(b) for b in bounds]):
            val = sum((t * A.gamma for t, A in zip(ts, anc)), Fraction(0))
            if val.denominator != 1:
                continue
            deg = sum(t * A.m for t, A in zip(ts, anc))
            cands.append((deg, ts, int(val)))
        cands.sort()
        basis, rows, pivots = [], [], []
        for deg, ts, val in cands:
            poly = RationalPoly.const(Fraction(p) ** (-val))
            for t, A in zip(ts, anc):
                if t:
                    poly = poly * A.key**t
            vec = F.vector(self.unit_residue([(poly, 1)]))
            red = _reduce(vec, rows, pivots, p)
            if any(red):
                piv = next(k for k, c in enumerate(red) if c)
                inv = pow(red[piv], -1, p)
                rows.append([c * inv % p for c in red])
                pivots.append(piv)
                basis.append((poly, vec))
                if len(basis) == F.k:
                    break
        if len(basis) != F.k:
            raise AssertionError("residue field basis not found among chain monomials")
        return basis

    def lift_residue(self, c: FqElem) -> RationalPoly:
        """A polynomial ``a`` with ``deg a < m``, value 0 and residue ``c`` (c nonzero)."""
        if c.is_zero():
            raise ValueError("zero has no unit lift")
        F = self.field
        p = self.p
        basis = self._residue_basis
        k = F.k
        # solve sum x_j vec_j = target over F_p
        M = [[basis[j][1][i] for j in range(k)] + [F.vector(c)[i]] for i in range(k)]
        xs = _solve_mod_p(M, p)
        out = RationalPoly(())
        for x, (poly, _) in zip(xs, basis):
            x = x if x <= p // 2 else x - p
            if x:
                out = out + poly * x
        return out


def _reduce(vec, rows, pivots, p):
    red = list(vec)
    for row, piv in zip(rows, pivots):
        if red[piv]:
            f = red[piv]
            red = [(a - f * b) % p for a, b in zip(red, row)]
    return red


def _solve_mod_p(M, p):
    n = len(M)
    M = [row[:] for row in M]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] % p)
        M[col], M[piv] = M[piv], M[col]
        inv = pow(M[col][col], -1, p)
        M[col] = [a * inv % p for a in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [(a - f * b) % p for a, b in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def levels(mu: InductiveValuation, seed: int = 0) -> list:
    """Levels ``0..r`` of the compressed form of ``mu`` (cached on the chain)."""
    c = mu.compressed()
    key = ("levels", seed)
    if key not in c._cache:
        out = []
        prev = None
        for n in range(c.depth + 1):
            fam = c.steps[n - 1].family if n else None
            prev = _Level(c.prefix(n), prev, fam, seed)
            out.append(prev)
        c._cache[key] = out
    return c._cache[key]


def _top(mu: InductiveValuation, seed: int = 0) -> _Level:
    if not mu.is_residually_transcendental():
        raise NotResiduallyTranscendental("last value is infinite")
    return levels(mu, seed)[-1]


def residue_field(mu: InductiveValuation, seed: int = 0) -> FieldDesc:
    """The field kappa(mu) in which residual polynomials of ``mu`` live."""
    return levels(mu, seed)[-1].field


def residue_lift(mu: InductiveValuation, c: FqElem, seed: int = 0) -> RationalPoly:
    return _top(mu, seed).lift_residue(c)


def normalizer(mu: InductiveValuation) -> Normalizer:
    return _top(mu).normalizer


def residual(mu: InductiveValuation, f: RationalPoly, seed: int = 0) -> ResidualData:
    """Initial term of ``f`` for ``mu``: value, ``s0`` and the monic residual polynomial."""
    if f.is_zero():
        raise ZeroPolynomial("residual of zero")
    top = _top(mu, seed)
    it = top.initial(f)
    raw = FqPoly._raw(top.field, it.coeffs)
    lc = raw.lc()
    return ResidualData(it.value, it.s0, raw.monic(), lc)


def equiv(mu: InductiveValuation, f: RationalPoly, g: RationalPoly) -> bool:
    """``f ~_mu g``: same initial term."""
    return equiv_values(mu, f, g)


def is_key(mu: InductiveValuation, chi: RationalPoly, seed: int = 0) -> bool:
    if not chi.is_monic() or chi.degree < 1:
        return False
    top = _top(mu, seed)
    if chi.degree == top.m and equiv(mu, chi, mu.last_key):
        return True
    it = top.initial(chi)
    if it.s0 != 0:
        return False
    R = FqPoly._raw(top.field, it.coeffs)
    if chi.degree != top.m * top.e * R.degree:
        return False
    return fq_is_irreducible(R)


def lift(mu: InductiveValuation, psi: FqPoly, seed: int = 0) -> RationalPoly:
    """A key polynomial ``chi`` for ``mu`` with residual polynomial ``psi``."""
    top = _top(mu, seed)
    if psi.field != top.field:
        raise ValueError(f"psi must have coefficients in {top.field}")
    psi = psi.monic()
    if psi.degree == 1 and psi.coeffs[0].is_zero():
        raise PsiIsY("y corresponds to the last key itself")
    if not fq_is_irreducible(psi):
        raise ValueError(f"{psi} is not irreducible")
    d, e, phi, u = psi.degree, top.e, top.key, top.u
    chi = phi ** (e * d)
    for j in range(d):
        c = psi.coeffs[j]
        if c.is_zero():
            continue
        a = (top.lift_residue(c) * u ** (d - j)) % phi
        chi = chi + a * phi ** (e * j)
    check = residual(mu, chi, seed)
    if check.s0 != 0 or check.R != psi:
        raise AssertionError("lifted polynomial has the wrong residual polynomial")
    return chi


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple  # ((s, value), ...)
    sides: tuple  # ((slope, length), ...)
    points: tuple  # every (s, value) with a_s != 0

    @property
    def lowest_index(self) -> int:
        return self.points[0][0]


def newton_polygon(mu: InductiveValuation, phi: RationalPoly, f: RationalPoly) -> NewtonPolygon:
    """Lower convex hull of ``{(s, mu(a_s))}`` over the phi-expansion of ``f``."""
    if f.is_zero():
        raise ZeroPolynomial("Newton polygon of zero")
    pts = [(s, mu.eval(a)) for s, a in enumerate(phi_expand(f, phi)) if a]
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (s1, v1), (s2, v2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (v2 - v1) * (pt[0] - s1) >= (pt[1] - v1) * (s2 - s1):
                hull.pop()
            else:
                break
        hull.append(pt)
    sides = tuple(
        (Fraction(b[1] - a[1], b[0] - a[0]), b[0] - a[0]) for a, b in zip(hull, hull[1:])
    )
    return NewtonPolygon(tuple(hull), sides, tuple(pts))
