"""MacLane-Vaquie chains: validation, compression, per-node invariants,
the e/f/d ledger and presentations of the graded algebra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Optional

from .exactnum import INF, RationalPoly, Value, ValueGroup
from .ffield import FieldDesc, FqPoly
from .keypoly import is_key, levels
from .limitfam import stable_value
from .valuation import InductiveValuation, equiv_values

__all__ = [
    "MLVChain",
    "MLVViolation",
    "SupportRequired",
    "ChainInvariants",
    "GradedPresentation",
    "validate",
    "compress",
    "invariants",
    "defect_ledger",
    "graded_presentation",
    "format_fq_poly",
]


class MLVViolation(ValueError):
    """All failed conditions, as ``(step, condition)`` pairs; ``step`` is 1-based."""

    def __init__(self, violations: list):
        self.violations = list(violations)
        self.step, self.condition = self.violations[0]
        text = "; ".join(f"step {s}: {c}" for s, c in self.violations)
        super().__init__(text)


class SupportRequired(ValueError):
    pass


@dataclass(frozen=True)
class MLVChain:
    """A validated chain with the representative of each class ``Phi_{mu_n, mu_{n+1}}``."""

    valuation: InductiveValuation
    phi_reps: tuple
    phi_degrees: tuple

    @property
    def depth(self) -> int:
        return self.valuation.depth

    @property
    def p(self) -> int:
        return self.valuation.p

    def eval(self, f: RationalPoly) -> Value:
        return self.valuation.eval(f)


def _violations(mu: InductiveValuation) -> list:
    out = []
    for n, st in enumerate(mu.steps, start=1):
        prev = mu.prefix(n - 1)
        prev_deg = prev.degree
        if not st.is_limit:
            if st.phi.degree <= prev_deg:
                out.append((n, f"ordinary step does not raise the degree ({prev_deg} -> {st.phi.degree})"))
                continue
            if not is_key(prev, st.phi):
                out.append((n, f"{st.phi} is not a key polynomial for the previous valuation"))
                continue
            if not st.gamma > prev.eval(st.phi):
                out.append((n, "value does not exceed the previous value of the key"))
            continue
        fam = st.family.rebased(prev)
        chi1, beta1 = fam.term(1)
        if chi1.degree != prev_deg:
            out.append((n, f"family stable degree {chi1.degree} differs from deg phi_{n - 1} = {prev_deg}"))
            continue
        if equiv_values(prev, prev.last_key, chi1):
            out.append((n, f"previous key lies in the class of the family"))
            continue
        if st.phi.degree <= prev_deg:
            out.append((n, "limit key does not exceed the stable degree"))
            continue
        rep = stable_value(fam, st.phi)
        if rep.stable:
            out.append((n, f"limit key {st.phi} is stable for the family"))
        elif not st.gamma > rep.values[-1]:
            out.append((n, "value does not exceed the family values of the limit key"))
    return out


def validate(mu: InductiveValuation) -> MLVChain:
    bad = _violations(mu)
    if bad:
        raise MLVViolation(bad)
    reps, degs = [], []
    for st in mu.steps:
        rep = st.family.term(1)[0] if st.is_limit else st.phi
        reps.append(rep)
        degs.append(rep.degree)
    return MLVChain(mu, tuple(reps), tuple(degs))


def compress(mu: InductiveValuation) -> MLVChain:
    """Collapse same-degree steps onto earlier nodes and validate the result."""
    return validate(mu.compressed())


def _as_chain(chain) -> MLVChain:
    return chain if isinstance(chain, MLVChain) else validate(chain)


@dataclass(frozen=True)
class ChainInvariants:
    m: tuple
    gamma: tuple
    groups: tuple
    e: tuple
    f: tuple
    d: tuple
    kappa: tuple

    @property
    def e_total(self) -> int:
        return prod(self.e)

    @property
    def f_total(self) -> int:
        return prod(self.f)

    @property
    def d_total(self) -> Fraction:
        return prod(self.d, start=Fraction(1))

    def as_dict(self) -> dict:
        return {
            "m": list(self.m),
            "e": list(self.e),
            "f": list(self.f),
            "d": [str(x) for x in self.d],
        }


def invariants(chain) -> ChainInvariants:
    """Per-node table ``m_n, gamma_n, Gamma_n, e_n, f_n, d_n, kappa_n``.

    ``f_n`` is read off the residual polynomial of the next class
    representative and cross-checked against ``deg Phi / (e_n m_n)``.
    """
    chain = _as_chain(chain)
    mu = chain.valuation
    lv = levels(mu)
    r = mu.depth
    m = tuple(L.m for L in lv)
    es, fs, ds = [], [], []
    for n in range(r):
        L = lv[n]
        st = mu.steps[n]
        if st.is_limit:
            fn = L.initial(chain.phi_reps[n])
            fn_deg = len(fn.coeffs) - 1
            dn = Fraction(m[n + 1], m[n])
        else:
            fn_deg = lv[n + 1].psi.degree
            dn = Fraction(1)
        other = Fraction(chain.phi_degrees[n], L.e * L.m)
        if other != fn_deg:
            raise AssertionError(f"node {n}: residual degree {fn_deg} but deg Phi/(e m) = {other}")
        if m[n + 1] != L.e * fn_deg * dn * m[n]:
            raise AssertionError(f"node {n}: m_(n+1) != e_n f_n d_n m_n")
        es.append(L.e)
        fs.append(fn_deg)
        ds.append(dn)
    return ChainInvariants(
        m=m,
        gamma=tuple(L.gamma for L in lv),
        groups=tuple(L.group for L in lv),
        e=tuple(es),
        f=tuple(fs),
        d=tuple(ds),
        kappa=tuple(L.field for L in lv),
    )


def defect_ledger(chain) -> tuple:
    """``(e, f, d)`` for a chain ending in ``[mu; phi, oo]``; ``e f d = deg phi``."""
    chain = _as_chain(chain)
    mu = chain.valuation
    if mu.last_gamma is not INF:
        raise SupportRequired("the last value must be infinite")
    inv = invariants(chain)
    e, f, d = inv.e_total, inv.f_total, inv.d_total
    if e * f * d != mu.degree:
        raise AssertionError("e f d differs from the degree of the last key")
    return e, f, d


def format_fq_poly(g: FqPoly, var: str = "y") -> str:
    """Compact text form; prime-field coefficients use balanced representatives."""
    F = g.field
    terms = []
    for i in range(g.degree, -1, -1):
        c = g.coeffs[i]
        if c.is_zero():
            continue
        mon = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if F.k == 1:
            n = c.balanced_int()
            sign = "-" if n < 0 else "+"
            a = abs(n)
            body = str(a) if not mon else (mon if a == 1 else f"{a}*{mon}")
        else:
            sign = "+"
            body = f"({c})" if not mon else (mon if c == F.one else f"({c})*{mon}")
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return out


@dataclass(frozen=True)
class GradedPresentation:
    p: int
    kappa_tower: tuple  # minimal polynomial of z_n over kappa_n
    kappa_degrees: tuple  # [kappa_n : F_p] for n = 0..r
    generators: tuple  # (name, degree)
    relations: tuple
    normalizers: tuple  # (name, monomial expression)
    transcendental: Optional[tuple]  # (name, degree) or None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "kappa_tower": list(self.kappa_tower),
            "kappa_degrees": list(self.kappa_degrees),
            "generators": [{"name": n, "degree": str(d)} for n, d in self.generators],
            "relations": list(self.relations),
            "normalizers": {n: e for n, e in self.normalizers},
            "transcendental": None
            if self.transcendental is None
            else {"name": self.transcendental[0], "degree": str(self.transcendental[1])},
        }


def graded_presentation(chain) -> GradedPresentation:
    chain = _as_chain(chain)
    mu = chain.valuation
    lv = levels(mu)
    r = mu.depth
    tower, gens, rels, norms = [], [], [], []
    for n in range(r):
        L = lv[n]
        if mu.steps[n].is_limit:
            it = L.initial(chain.phi_reps[n])
            psi = FqPoly._raw(L.field, it.coeffs).monic()
        else:
            psi = lv[n + 1].psi
        tower.append(format_fq_poly(psi))
        gens.append((f"x{n}", L.gamma))
        if L.e * L.gamma not in L.prev_group:
            raise AssertionError(f"relation {n} is not degree-consistent")
        lhs = f"x{n}" if L.e == 1 else f"x{n}^{L.e}"
        rels.append(f"{lhs} = u{n}*z{n}")
        norms.append((f"u{n}", L.normalizer.expression()))
    top = lv[r]
    trans = None if top.gamma is INF else (f"q{r}", top.gamma)
    return GradedPresentation(
        p=mu.p,
        kappa_tower=tuple(tower),
        kappa_degrees=tuple(L.field.k for L in lv),
        generators=tuple(gens),
        relations=tuple(rels),
        normalizers=tuple(norms),
        transcendental=trans,
    )
