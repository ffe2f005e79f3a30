"""Classification and solving of CSPs over graphs of co-Boolean functions."""

from .algebra import (
    BooleanOperation,
    HMatrix,
    build_h_matrix,
    closed_under,
    compute_core,
    extend_operation,
    preserves_graphs,
    tuple_leq,
)
from .classifier import Classification, TractabilityReason, classify, explain, explain_text
from .encoder import BooleanSystem, encode, lift
from .errors import CoboolError, ContractError, InternalError, ParseError, ValidationError
from .model import (
    Apply,
    ApplyApply,
    Equal,
    Instance,
    NormalizedInstance,
    Pin,
    Template,
    TriviallyUnsat,
    evaluate,
    normalize_instance,
    parse_instance,
    parse_template,
    render_template,
)
from .oracle import enumerate_solutions, solve_backtracking
from .pipeline import solve
from .polysolve import affine_hull, solve_affine, solve_majority, solve_semilattice, solve_tractable

__all__ = [
    "BooleanOperation",
    "HMatrix",
    "build_h_matrix",
    "closed_under",
    "compute_core",
    "extend_operation",
    "preserves_graphs",
    "tuple_leq",
    "Classification",
    "TractabilityReason",
    "classify",
    "explain",
    "explain_text",
    "BooleanSystem",
    "encode",
    "lift",
    "CoboolError",
    "ContractError",
    "InternalError",
    "ParseError",
    "ValidationError",
    "Apply",
    "ApplyApply",
    "Equal",
    "Instance",
    "NormalizedInstance",
    "Pin",
    "Template",
    "TriviallyUnsat",
    "evaluate",
    "normalize_instance",
    "parse_instance",
    "parse_template",
    "render_template",
    "enumerate_solutions",
    "solve_backtracking",
    "solve",
    "affine_hull",
    "solve_affine",
    "solve_majority",
    "solve_semilattice",
    "solve_tractable",
]

__version__ = "0.1.0"
