"""Explicit norm-one elements for cyclic p-groups acting on noncommutative rings."""

from .errors import ContextMismatchError, ParameterError, ParseError, PreconditionError
from .ncpoly import GroupContext, Poly, poly_add, poly_mul, poly_scale
from .group_action import (
    Operator,
    SubgroupSpec,
    apply_operator,
    norm_op,
    partial_sum_op,
    shift,
)
from .oracle import (
    RelationSet,
    is_norm_one,
    monomial_count,
    normal_form,
    step_bound,
    unit_chain_bound,
)
from .construction import (
    ChainResult,
    LiftStepResult,
    build_a,
    build_w,
    build_z,
    generate,
    lemma1_decompose,
)

__all__ = [
    "ChainResult",
    "ContextMismatchError",
    "GroupContext",
    "LiftStepResult",
    "Operator",
    "ParameterError",
    "ParseError",
    "Poly",
    "PreconditionError",
    "RelationSet",
    "SubgroupSpec",
    "apply_operator",
    "build_a",
    "build_w",
    "build_z",
    "generate",
    "is_norm_one",
    "lemma1_decompose",
    "monomial_count",
    "norm_op",
    "normal_form",
    "partial_sum_op",
    "poly_add",
    "poly_mul",
    "poly_scale",
    "shift",
    "step_bound",
    "unit_chain_bound",
]
