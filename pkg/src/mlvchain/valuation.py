"""Inductive valuations on Q[x] extending ord_p.

An :class:`InductiveValuation` is a depth-zero valuation ``omega_{a,gamma}``
followed by a list of augmentation steps.  Ordinary steps evaluate through
phi-expansions against the previous node; limit steps evaluate coefficients
with the stability function of a continuous family (see :mod:`limitfam`).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional, Sequence

from .exactnum import (
    INF,
    RationalPoly,
    Value,
    ValueGroup,
    X,
    as_value,
    group_index,
    group_join,
    padic_val,
    phi_expand,
)
from .ffield import is_prime

__all__ = [
    "ValuedBase",
    "DepthZero",
    "AugStep",
    "InductiveValuation",
    "gauss",
    "depth_zero",
    "UnstableCoefficient",
    "NotResiduallyTranscendental",
    "LimitStepPresent",
    "eval_poly",
    "value_group",
    "e_rel",
    "equals",
    "distinguishing_witness",
    "divides_probe",
]


class UnstableCoefficient(ArithmeticError):
    """A limit step needed a stability value that was not found within budget."""


class NotResiduallyTranscendental(ValueError):
    pass


class LimitStepPresent(ValueError):
    pass


@dataclass(frozen=True)
class ValuedBase:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")


@dataclass(frozen=True)
class DepthZero:
    a: Fraction
    gamma: Value


@dataclass(frozen=True)
class AugStep:
    """One augmentation ``[mu; phi, gamma]``; a limit step also carries its family."""

    phi: RationalPoly
    gamma: Value
    family: object = None

    @property
    def kind(self) -> str:
        return "ordinary" if self.family is None else "limit"

    @property
    def is_limit(self) -> bool:
        return self.family is not None


class InductiveValuation:
    """Chain ``omega_{a,gamma_0} -> [.; phi_1, gamma_1] -> ... -> [.; phi_r, gamma_r]``.

    Node ``n`` has key ``phi_n`` (``phi_0 = x - a``) and value ``gamma_n``.
    Instances are immutable; derived data is cached on the instance.
    """

    def __init__(self, p: int, a=0, gamma=0, steps: Sequence[AugStep] = ()):
        self.base = ValuedBase(p)
        self.zero = DepthZero(Fraction(a), as_value(gamma))
        self.steps = tuple(steps)
        self._cache = {}
        for n, st in enumerate(self.steps):
            if not st.phi.is_monic():
                raise ValueError(f"key of step {n + 1} is not monic")
        for n in range(self.depth):
            if self.gamma_at(n) is INF:
                raise ValueError("only the final value of a chain may be infinite")

    # -- structure ------------------------------------------------------------

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def depth(self) -> int:
        return len(self.steps)

    def key(self, n: int) -> RationalPoly:
        if n == 0:
            return X - self.zero.a
        return self.steps[n - 1].phi

    def gamma_at(self, n: int) -> Value:
        if n == 0:
            return self.zero.gamma
        return self.steps[n - 1].gamma

    @property
    def keys(self) -> list:
        return [self.key(n) for n in range(self.depth + 1)]

    @property
    def gammas(self) -> list:
        return [self.gamma_at(n) for n in range(self.depth + 1)]

    @property
    def last_key(self) -> RationalPoly:
        return self.key(self.depth)

    @property
    def last_gamma(self) -> Value:
        return self.gamma_at(self.depth)

    @property
    def degree(self) -> int:
        return self.last_key.degree

    @property
    def has_limit_steps(self) -> bool:
        return any(st.is_limit for st in self.steps)

    def is_residually_transcendental(self) -> bool:
        return self.last_gamma is not INF

    def prefix(self, n: int) -> "InductiveValuation":
        """The valuation at node ``n`` (``prefix(depth)`` is ``self``)."""
        if n == self.depth:
            return self
        key = ("prefix", n)
        if key not in self._cache:
            self._cache[key] = InductiveValuation(self.p, self.zero.a, self.zero.gamma, self.steps[:n])
        return self._cache[key]

    def augment(self, phi: RationalPoly, gamma) -> "InductiveValuation":
        return InductiveValuation(self.p, self.zero.a, self.zero.gamma, self.steps + (AugStep(phi, as_value(gamma)),))

    def limit_augment(self, family, phi: RationalPoly, gamma) -> "InductiveValuation":
        return InductiveValuation(
            self.p, self.zero.a, self.zero.gamma, self.steps + (AugStep(phi, as_value(gamma), family),)
        )

    def with_nodes(self, a, gamma, steps) -> "InductiveValuation":
        return InductiveValuation(self.p, a, gamma, steps)

    def __eq__(self, other):
        if not isinstance(other, InductiveValuation):
            return NotImplemented
        return (self.p, self.zero, self.steps) == (other.p, other.zero, other.steps)

    def __hash__(self):
        return hash((self.p, self.zero, self.steps))

    def __repr__(self):
        parts = [f"omega_{{{self.zero.a},{self.zero.gamma}}}"]
        for st in self.steps:
            tag = "limit " if st.is_limit else ""
            parts.append(f"[{tag}{st.phi} -> {st.gamma}]")
        return f"InductiveValuation(p={self.p}: " + " -> ".join(parts) + ")"

    # -- evaluation -------------------------------------------------------------

    def eval(self, f: RationalPoly) -> Value:
        if not isinstance(f, RationalPoly):
            f = RationalPoly(f)
        if f.is_zero():
            return INF
        return self._eval(self.depth, f, {})

    __call__ = eval

    def _eval(self, n: int, f: RationalPoly, memo: dict) -> Value:
        if f.is_zero():
            return INF
        key = (n, f)
        if key in memo:
            return memo[key]
        if n == 0:
            p, gamma = self.p, self.zero.gamma
            coeffs = f.taylor_shift(self.zero.a).coeffs
            best = INF
            for s, c in enumerate(coeffs):
                if c == 0:
                    continue
                v = padic_val(c, p)
                if s:
                    v = v + s * gamma
                if v < best:
                    best = v
        else:
            step = self.steps[n - 1]
            best = INF
            for s, a in enumerate(phi_expand(f, step.phi)):
                if a.is_zero():
                    continue
                if step.is_limit:
                    v = step.family.stable_eval(a)
                else:
                    v = self._eval(n - 1, a, memo)
                if s:
                    v = v + s * step.gamma
                if v < best:
                    best = v
        memo[key] = best
        return best

    # -- compression (Case 1 / Case 2 rewriting) ------------------------------

    def compressed(self) -> "InductiveValuation":
        """Equivalent chain with no same-degree ordinary steps and no limit step
        whose predecessor key lies in the family's class."""
        if "compressed" in self._cache:
            return self._cache["compressed"]
        a, g0 = self.zero.a, self.zero.gamma
        new_steps: list = []

        def last_deg():
            return new_steps[-1].phi.degree if new_steps else 1

        def replace_last(phi, gamma):
            nonlocal a, g0
            if not new_steps:
                if phi.degree != 1:
                    raise AssertionError("depth-zero node needs a linear key")
                a, g0 = -phi.coeffs[0], gamma
            else:
                new_steps[-1] = replace(new_steps[-1], phi=phi, gamma=gamma)

        for st in self.steps:
            if not st.is_limit and st.phi.degree == last_deg():
                replace_last(st.phi, st.gamma)
                continue
            if st.is_limit:
                prefix = InductiveValuation(self.p, a, g0, new_steps)
                fam = st.family.rebased(prefix)
                chi1, beta1 = fam.term(1)
                if equiv_values(prefix, prefix.last_key, chi1):
                    replace_last(chi1, beta1)
                    prefix = InductiveValuation(self.p, a, g0, new_steps)
                    fam = st.family.shifted(1).rebased(prefix)
                new_steps.append(AugStep(st.phi, st.gamma, fam))
                continue
            new_steps.append(st)
        out = InductiveValuation(self.p, a, g0, new_steps)
        if out == self:
            out = self
        out._cache["compressed"] = out
        self._cache["compressed"] = out
        return out

    # -- groups -------------------------------------------------------------------

    def node_groups(self) -> list:
        """Value groups Gamma_0, ..., Gamma_r of the compressed chain's nodes."""
        c = self.compressed()
        if "groups" not in c._cache:
            G = ValueGroup(1)
            out = []
            for g in c.gammas:
                G = group_join(G, g)
                out.append(G)
            c._cache["groups"] = out
        return c._cache["groups"]


def gauss(p: int) -> InductiveValuation:
    """The Gauss valuation ``omega_{0,0}``."""
    return InductiveValuation(p, 0, 0)


def depth_zero(p: int, a=0, gamma=0) -> InductiveValuation:
    return InductiveValuation(p, a, gamma)


def equiv_values(mu: InductiveValuation, f: RationalPoly, g: RationalPoly) -> bool:
    if f == g:
        return True
    return mu.eval(f - g) > mu.eval(f)


def eval_poly(mu: InductiveValuation, f: RationalPoly) -> Value:
    return mu.eval(f)


def value_group(mu: InductiveValuation) -> ValueGroup:
    return mu.node_groups()[-1]


def e_rel(mu: InductiveValuation) -> int:
    """Index of the group of values of polynomials of degree < deg(mu) in Gamma_mu."""
    if not mu.is_residually_transcendental():
        raise NotResiduallyTranscendental("last value is infinite")
    groups = mu.node_groups()
    below = groups[-2] if len(groups) > 1 else ValueGroup(1)
    return group_index(below, groups[-1])


def equals(mu: InductiveValuation, nu: InductiveValuation) -> bool:
    """Decide ``mu == nu`` for purely ordinary chains, node by node after compression."""
    if mu.has_limit_steps or nu.has_limit_steps:
        raise LimitStepPresent("equality of limit augmentations is only semi-decidable")
    if mu.p != nu.p:
        return False
    a, b = mu.compressed(), nu.compressed()
    if a.depth != b.depth:
        return False
    g, h = a.zero.gamma, b.zero.gamma
    if g != h or padic_val(a.zero.a - b.zero.a, a.p) < g:
        return False
    for n in range(1, a.depth + 1):
        phi, psi = a.key(n), b.key(n)
        if phi.degree != psi.degree or a.gamma_at(n) != b.gamma_at(n):
            return False
        if a.prefix(n - 1).eval(psi - phi) < a.gamma_at(n):
            return False
    return True


def distinguishing_witness(mu: InductiveValuation, nu: InductiveValuation) -> Optional[RationalPoly]:
    """A polynomial on which the two valuations differ, searched among the chain keys."""
    cands = []
    for v in (mu, nu):
        for chain in (v, v.compressed()):
            cands.extend(chain.keys)
    cands.append(X)
    seen = set()
    for f in cands:
        if f in seen:
            continue
        seen.add(f)
        if mu.eval(f) != nu.eval(f):
            return f
    return None


def divides_probe(mu: InductiveValuation, chi: RationalPoly, f: RationalPoly) -> bool:
    """``chi |_mu f``, decided by comparing ``mu`` with ``[mu; chi, mu(chi) + 1]`` on ``f``."""
    if f.is_zero():
        return True
    probe = mu.augment(chi, mu.eval(chi) + 1)
    return probe.eval(f) > mu.eval(f)
