"""All extensions of ord_p to Q[x]/(F) by the MacLane algorithm.

The search starts at the Gauss valuation with the factors of F mod p.  A
residual factor of multiplicity one closes a branch.  Otherwise the factor
is lifted to a key polynomial chi, and every side of the chi-Newton polygon
of F steeper than ``-mu(chi)`` gives an augmentation ``[mu; chi, gamma]``.
Each such augmentation is explored again through the factors of its
residual polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .chain import ChainInvariants, MLVChain, compress, invariants
from .exactnum import INF, NotMonic, RationalPoly, ValueGroup, group_index
from .ffield import FqPoly, fq_factor
from .keypoly import is_key, lift, newton_polygon, residual, residue_field
from .limitfam import ContinuousFamily, digit_stream_family
from .valuation import InductiveValuation, depth_zero, gauss, value_group

__all__ = [
    "NotSquarefree",
    "NotIntegral",
    "ExtensionLeaf",
    "ExtensionReport",
    "ApproximantOnly",
    "extensions",
    "exact_chain",
    "leaf_invariants",
    "root_approximations",
]

MAX_DEPTH = 64


class NotSquarefree(ValueError):
    pass


class NotIntegral(ValueError):
    pass


@dataclass(frozen=True)
class ExtensionLeaf:
    """One extension: the approximant ``mu``, the residual factor ``psi`` that
    singles it out, and the key ``chi`` lifting ``psi``.

    ``support`` marks the case ``chi | F`` where ``[mu; chi, oo]`` is exact.
    """

    F: RationalPoly
    approximant: InductiveValuation
    psi: FqPoly
    key: RationalPoly
    e: int
    f: int
    slopes: tuple
    support: bool = False

    @property
    def p(self) -> int:
        return self.approximant.p

    def sort_key(self):
        mu = self.approximant
        return (
            self.e,
            self.f,
            self.slopes,
            tuple(k.coeffs for k in mu.keys),
            tuple(str(g) for g in mu.gammas),
            self.psi.sort_key(),
        )


@dataclass(frozen=True)
class ExtensionReport:
    F: RationalPoly
    p: int
    leaves: tuple

    @property
    def sum_ef(self) -> int:
        return sum(l.e * l.f for l in self.leaves)

    @property
    def ef(self) -> list:
        return [(l.e, l.f) for l in self.leaves]


@dataclass(frozen=True)
class ApproximantOnly:
    """No ordinary chain makes F a key; ``family`` (if any) is the digit
    stream of the p-adic root that the leaf isolates."""

    approximant: InductiveValuation
    psi: FqPoly
    family: Optional[ContinuousFamily] = None


def _check_input(F: RationalPoly):
    if not F.is_monic():
        raise NotMonic("F must be monic")
    if not F.is_integral():
        raise NotIntegral("F must have integer coefficients")
    if F.degree < 1:
        raise ValueError("F must have positive degree")
    if F.gcd(F.derivative()).degree > 0:
        raise NotSquarefree(f"{F} is not squarefree")


def _y_poly(field) -> FqPoly:
    return FqPoly.y(field)


class _Search:
    def __init__(self, F: RationalPoly, p: int, seed: int):
        self.F = F
        self.p = p
        self.seed = seed
        self.leaves = []

    def augment(self, mu: InductiveValuation, chi: RationalPoly, gamma) -> InductiveValuation:
        if mu.depth == 0 and mu.zero.gamma == 0 and mu.zero.a == 0:
            if chi.degree == 1:
                return depth_zero(self.p, -chi.coeffs[0], gamma)
        return mu.augment(chi, gamma)

    def leaf(self, mu, psi, chi, slopes, support=False):
        e = group_index(ValueGroup(1), value_group(mu))
        f = residue_field(mu, self.seed).k * psi.degree
        self.leaves.append(ExtensionLeaf(self.F, mu, psi, chi, e, f, tuple(slopes), support))

    def branch(self, mu, psi, mult, slopes, depth):
        if psi == _y_poly(psi.field):
            chi = mu.last_key
        else:
            chi = lift(mu, psi, self.seed)
        if mult == 1:
            self.leaf(mu, psi, chi, slopes, support=(self.F % chi).is_zero())
            return
        self.explore(mu, chi, psi, slopes, depth)

    def explore(self, mu, chi, psi, slopes, depth):
        if depth > MAX_DEPTH:
            raise AssertionError("extension search exceeded its depth bound")
        N = newton_polygon(mu, chi, self.F)
        if N.lowest_index > 0:
            # chi divides F exactly
            self.leaf(mu, psi, chi, slopes, support=True)
        floor = mu.eval(chi)
        for slope, length in N.sides:
            gamma = -slope
            if not gamma > floor:
                continue
            nu = self.augment(mu, chi, gamma)
            res = residual(nu, self.F, self.seed)
            for fac, mult in fq_factor(res.R, self.seed):
                self.branch(nu, fac, mult, slopes + [gamma], depth + 1)


def extensions(F: RationalPoly, p: int, seed: int = 0) -> ExtensionReport:
    """Every extension of ord_p to Q[x]/(F), with ``(e, f)`` per extension."""
    _check_input(F)
    search = _Search(F, p, seed)
    mu = gauss(p)
    res = residual(mu, F, seed)
    y = _y_poly(res.R.field)
    facs = []
    if res.s0:
        facs.append((y, res.s0))
    facs.extend(fq_factor(res.R, seed))
    for psi, mult in facs:
        search.branch(mu, psi, mult, [], 0)
    leaves = tuple(sorted(search.leaves, key=ExtensionLeaf.sort_key))
    report = ExtensionReport(F, p, leaves)
    if report.sum_ef != F.degree:
        raise AssertionError(f"sum of e f is {report.sum_ef}, expected {F.degree}")
    return report


def root_approximations(leaf: ExtensionLeaf):
    """Yield ``(b, gamma)`` with ``v(theta - b) >= gamma`` and gamma growing,
    for the p-adic root ``theta`` of a leaf with ``e = f = 1``."""
    if leaf.e != 1 or leaf.f != 1:
        raise ValueError("only leaves with e = f = 1 isolate a root in Q_p")
    F, p = leaf.F, leaf.p
    mu = leaf.approximant.compressed()
    if mu.depth != 0:
        raise AssertionError("unramified degree-one leaf with a nonlinear approximant")
    chi = leaf.key
    while True:
        b = -chi.coeffs[0]
        N = newton_polygon(mu, chi, F)
        if N.lowest_index > 0:
            # exact rational root
            while True:
                yield b, INF
        floor = mu.eval(chi)
        sides = [(-s, ln) for s, ln in N.sides if -s > floor]
        if len(sides) != 1 or sides[0][1] != 1:
            raise AssertionError("isolated root does not give a single side of length one")
        gamma = sides[0][0]
        yield b, gamma
        mu = depth_zero(p, b, gamma)
        res = residual(mu, F)
        chi = lift(mu, res.R)


def _root_digits(leaf: ExtensionLeaf):
    approx = root_approximations(leaf)
    p = leaf.p
    state = {"b": Fraction(0), "gamma": Fraction(0)}

    def residue_mod(k: int) -> int:
        while state["gamma"] is not INF and state["gamma"] < k:
            b, g = next(approx)
            state["b"], state["gamma"] = b, g
        b = state["b"]
        q = p**k
        return b.numerator * pow(b.denominator, -1, q) % q

    def digit(j: int) -> int:
        return (residue_mod(j + 1) - residue_mod(j)) // p**j

    return digit


def exact_chain(leaf: ExtensionLeaf):
    """``[mu; F, oo]`` compressed, when F is a key for the approximant."""
    mu = leaf.approximant
    if leaf.support:
        return compress(mu.augment(leaf.key, INF))
    if is_key(mu, leaf.F):
        return compress(mu.augment(leaf.F, INF))
    family = None
    if leaf.e == 1 and leaf.f == 1:
        digits = _root_digits(leaf)
        family = digit_stream_family(
            leaf.p, digits=digits, key=("root", leaf.F.coeffs, leaf.p, leaf.key.coeffs)
        )
    return ApproximantOnly(mu, leaf.psi, family)


def leaf_invariants(leaf: ExtensionLeaf) -> ChainInvariants:
    """Invariants of ``[mu; chi, oo]``; their products reproduce the leaf's (e, f)."""
    chain = compress(leaf.approximant.augment(leaf.key, INF))
    inv = invariants(chain)
    if inv.e_total != leaf.e or inv.f_total != leaf.f:
        raise AssertionError("chain invariants disagree with the leaf's (e, f)")
    return inv
