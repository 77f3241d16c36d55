"""Continuous families of augmentations and limit augmentations.

A family is a deterministic stream ``i -> (chi_i, beta_i)`` for ``i >= 1``
of same-degree keys over a fixed base valuation, with ``beta_i`` strictly
increasing.  Stability of ``f`` is detected by the first index with
``rho_i(f) == rho_{i+1}(f)``: values of unstable polynomials increase
strictly, so a repeat settles the stable value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .exactnum import INF, RationalPoly, Value, X, phi_expand
from .valuation import InductiveValuation, UnstableCoefficient, gauss

__all__ = [
    "ContinuousFamily",
    "digit_stream_family",
    "padic_digits",
    "hensel_digits",
    "BudgetExhausted",
    "StabilityReport",
    "stable_value",
    "limit_eval",
    "Inessential",
    "EssentialWith",
    "Undetermined",
    "classify",
    "Equivalent",
    "Distinguished",
    "Inconclusive",
    "family_equiv_budgeted",
]

DEFAULT_BUDGET = 60


class BudgetExhausted(UnstableCoefficient):
    def __init__(self, coefficient: RationalPoly, budget: int):
        super().__init__(f"coefficient {coefficient} did not stabilize within {budget} family members")
        self.coefficient = coefficient
        self.budget = budget


class ContinuousFamily:
    """Family ``rho_i = [base; chi_i, beta_i]`` given by a pure stream.

    ``key`` identifies the stream for equality and hashing; two families
    with the same key, base and offset are considered identical.
    """

    def __init__(
        self,
        base: InductiveValuation,
        stream: Callable[[int], tuple],
        key=None,
        budget: int = DEFAULT_BUDGET,
        offset: int = 0,
        spec: Optional[dict] = None,
    ):
        self.base = base
        self.stream = stream
        self.key = key if key is not None else ("stream", id(stream))
        self.budget = budget
        self.offset = offset
        self.spec = spec
        self._terms = {}
        self._rhos = {}
        self._stable = {}

    def term(self, i: int) -> tuple:
        if i < 1:
            raise IndexError("family indices start at 1")
        if i not in self._terms:
            chi, beta = self.stream(i + self.offset)
            self._terms[i] = (chi, Fraction(beta))
        return self._terms[i]

    def rho(self, i: int) -> InductiveValuation:
        if i not in self._rhos:
            chi, beta = self.term(i)
            self._rhos[i] = self.base.augment(chi, beta)
        return self._rhos[i]

    @property
    def stable_degree(self) -> int:
        return self.term(1)[0].degree

    def stable_eval(self, f: RationalPoly) -> Value:
        rep = stable_value(self, f, self.budget)
        if not rep.stable:
            raise BudgetExhausted(f, self.budget)
        return rep.value

    def rebased(self, base: InductiveValuation) -> "ContinuousFamily":
        if base == self.base:
            return self
        return ContinuousFamily(base, self.stream, self.key, self.budget, self.offset, self.spec)

    def shifted(self, k: int) -> "ContinuousFamily":
        """The cofinal subfamily starting at index ``k + 1``."""
        return ContinuousFamily(self.base, self.stream, self.key, self.budget, self.offset + k, self.spec)

    def with_budget(self, budget: int) -> "ContinuousFamily":
        return ContinuousFamily(self.base, self.stream, self.key, budget, self.offset, self.spec)

    def __eq__(self, other):
        if not isinstance(other, ContinuousFamily):
            return NotImplemented
        return (self.key, self.offset, self.base) == (other.key, other.offset, other.base)

    def __hash__(self):
        return hash((self.key, self.offset))

    def __repr__(self):
        return f"ContinuousFamily({self.key!r}, offset={self.offset})"


def padic_digits(theta, p: int) -> Callable[[int], int]:
    """Digit function ``j -> c_j`` of the p-adic expansion of a p-integral rational."""
    theta = Fraction(theta)
    if theta.denominator % p == 0:
        raise ValueError(f"{theta} is not {p}-integral")
    cache = []
    state = [theta]

    def digit(j: int) -> int:
        while len(cache) <= j:
            t = state[0]
            c = t.numerator * pow(t.denominator, -1, p) % p
            cache.append(c)
            state[0] = (t - c) / p
        return cache[j]

    return digit


def hensel_digits(f: RationalPoly, p: int, r0: int) -> Callable[[int], int]:
    """Digits of the p-adic root of ``f`` congruent to ``r0`` mod p (simple root)."""
    if any(c.denominator % p == 0 for c in f.coeffs):
        raise ValueError("polynomial is not p-integral")
    df = f.derivative()

    def mod(c: Fraction, q: int) -> int:
        return c.numerator * pow(c.denominator, -1, q) % q

    if mod(f(Fraction(r0)), p) != 0:
        raise ValueError(f"{r0} is not a root mod {p}")
    if mod(df(Fraction(r0)), p) == 0:
        raise ValueError(f"{r0} is a multiple root mod {p}")
    approx = [r0 % p]  # approx[n] = root mod p^(n+1)

    def digit(j: int) -> int:
        while len(approx) <= j:
            n = len(approx)
            q = p ** (n + 1)
            r = approx[-1]
            fr = mod(f(Fraction(r)), q)
            dr = mod(df(Fraction(r)), q)
            approx.append((r - fr * pow(dr, -1, q)) % q)
        prev = approx[j - 1] if j else 0
        return (approx[j] - prev) // p**j

    return digit


def digit_stream_family(
    p: int,
    theta=None,
    digits: Optional[Callable[[int], int]] = None,
    base: Optional[InductiveValuation] = None,
    budget: int = DEFAULT_BUDGET,
    key=None,
    spec: Optional[dict] = None,
) -> ContinuousFamily:
    """``chi_i = x - a_i`` with ``a_i = sum_{j<i} c_j p^j`` and ``beta_i = i``.

    Digits come from a rational ``theta`` or from a ``digits`` callback.
    """
    if (theta is None) == (digits is None):
        raise ValueError("give exactly one of theta and digits")
    if theta is not None:
        digits = padic_digits(theta, p)
        key = key or ("theta", p, str(Fraction(theta)))
        spec = spec or {"theta": str(Fraction(theta))}
    partial = [0]

    def stream(i: int):
        while len(partial) <= i:
            j = len(partial) - 1
            partial.append(partial[-1] + digits(j) * p**j)
        return X - partial[i], i

    base = base if base is not None else gauss(p)
    return ContinuousFamily(base, stream, key, budget, spec=spec)


@dataclass(frozen=True)
class StabilityReport:
    stable: bool
    value: Optional[Value]
    index: Optional[int]
    values: tuple = field(default_factory=tuple)

    def __str__(self):
        if self.stable:
            return f"Stable({self.value}, {self.index})"
        return f"UnstableWithin({len(self.values)}, {[str(v) for v in self.values]})"


def stable_value(A: ContinuousFamily, f: RationalPoly, budget: Optional[int] = None) -> StabilityReport:
    """First index ``i`` with ``rho_i(f) == rho_{i+1}(f)``, within ``budget`` members."""
    budget = budget or A.budget
    if budget < 2:
        raise ValueError("budget must be at least 2")
    cached = A._stable.get(f)
    if cached is not None and (cached.stable or len(cached.values) >= budget):
        return cached
    values = [A.rho(1).eval(f)]
    for i in range(1, budget):
        values.append(A.rho(i + 1).eval(f))
        if values[-1] == values[-2]:
            rep = StabilityReport(True, values[-1], i, tuple(values))
            A._stable[f] = rep
            return rep
    rep = StabilityReport(False, None, None, tuple(values))
    A._stable[f] = rep
    return rep


def _limit_step(mu: InductiveValuation):
    if not mu.steps or not mu.steps[-1].is_limit:
        raise ValueError("last step is not a limit augmentation")
    return mu.steps[-1]


def limit_eval(mu: InductiveValuation, f: RationalPoly, budget: Optional[int] = None) -> Value:
    """``min rho_A(a_s) + s gamma`` over the phi-expansion for a limit augmentation."""
    step = _limit_step(mu)
    A = step.family
    budget = budget or A.budget
    best = INF
    for s, a in enumerate(phi_expand(f, step.phi)):
        if not a:
            continue
        rep = stable_value(A, a, budget)
        if not rep.stable:
            raise BudgetExhausted(a, budget)
        v = rep.value + s * step.gamma if s else rep.value
        if v < best:
            best = v
    return best


@dataclass(frozen=True)
class Inessential:
    witness: RationalPoly
    kind = "inessential"


@dataclass(frozen=True)
class EssentialWith:
    phi: RationalPoly
    kind = "essential"


@dataclass(frozen=True)
class Undetermined:
    kind = "undetermined"


def classify(A: ContinuousFamily, candidates, budget: Optional[int] = None):
    """Trichotomy from the least-degree unstable candidate."""
    m = A.stable_degree
    for chi in sorted(candidates, key=lambda g: g.degree):
        rep = stable_value(A, chi, budget)
        if rep.stable:
            continue
        if chi.degree < m:
            raise ValueError(f"{chi} has degree below the stable degree yet grows")
        if chi.degree == m:
            return Inessential(chi)
        return EssentialWith(chi)
    return Undetermined()


@dataclass(frozen=True)
class Equivalent:
    kind = "equivalent"


@dataclass(frozen=True)
class Distinguished:
    witness: RationalPoly
    kind = "distinguished"


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    kind = "inconclusive"


def family_equiv_budgeted(A: ContinuousFamily, B: ContinuousFamily, sample, budget: Optional[int] = None):
    """Budgeted comparison of stability functions on ``sample``.

    Families are told apart when both are stable with different values,
    or when one is stable at ``v`` while the other already exceeds ``v``.
    """
    if A.base.p != B.base.p:
        raise ValueError("families over different primes")
    missing = None
    for f in sample:
        ra, rb = stable_value(A, f, budget), stable_value(B, f, budget)
        if ra.stable and rb.stable:
            if ra.value != rb.value:
                return Distinguished(f)
            continue
        if ra.stable and rb.values[-1] > ra.value:
            return Distinguished(f)
        if rb.stable and ra.values[-1] > rb.value:
            return Distinguished(f)
        missing = missing or f
    if missing is not None:
        return Inconclusive(f"no verdict on {missing} within budget")
    return Equivalent()
