"""Inductive valuations on Q[x] extending the p-adic valuation.

Modules:

- :mod:`exactnum`  rationals, values in Q u {oo}, value groups, polynomials over Q
- :mod:`ffield`    finite fields, factorization, embeddings
- :mod:`valuation` depth-zero valuations, augmentations, evaluation, equality
- :mod:`keypoly`   residual polynomials, normalizers, key polynomials, lifting
- :mod:`limitfam`  continuous families, stability, limit augmentations
- :mod:`chain`     MLV validation, compression, invariants, graded presentations
- :mod:`extend`    extensions of ord_p to Q[x]/(F)
- :mod:`cli`       JSON command line
"""

from .chain import (
    ChainInvariants,
    GradedPresentation,
    MLVChain,
    MLVViolation,
    compress,
    defect_ledger,
    graded_presentation,
    invariants,
    validate,
)
from .exactnum import INF, RationalPoly, ValueGroup, X, group_index, group_join, phi_expand, value_min
from .extend import ApproximantOnly, exact_chain, extensions, leaf_invariants
from .ffield import FieldDesc, FqPoly, extend_field, fq_factor, fq_is_irreducible, prime_field
from .keypoly import equiv, is_key, lift, newton_polygon, normalizer, residual, residue_field
from .limitfam import (
    ContinuousFamily,
    classify,
    digit_stream_family,
    family_equiv_budgeted,
    hensel_digits,
    limit_eval,
    stable_value,
)
from .valuation import (
    InductiveValuation,
    depth_zero,
    divides_probe,
    e_rel,
    equals,
    gauss,
    value_group,
)

__version__ = "0.1.0"
