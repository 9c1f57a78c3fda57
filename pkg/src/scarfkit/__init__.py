"""Exact path-following solver for Scarf's lemma and the problems that reduce to it."""
from .core import (
    CanonicalScarf,
    FeasibleBasis,
    ScarfInstance,
    ScarfSolution,
    canonicalize,
    cardinal_pivot,
    is_subordinating,
    ordinal_extensions,
    solve,
    solve_basis,
    validate_instance,
    verify_solution,
)
from .estimators import ScarfSolver, StableMatchingSolver, StrongKernelSolver
from .exceptions import (
    InternalAssertion,
    InvalidInstance,
    LemmaViolation,
    ScarfError,
    StepLimitExceeded,
    UnboundedDirection,
    Unrepairable,
)
from .kernels import Digraph, solve_strong_kernel
from .matchings import HypergraphPrefSystem, solve_stable_matching

__all__ = [
    "CanonicalScarf",
    "Digraph",
    "FeasibleBasis",
    "HypergraphPrefSystem",
    "InternalAssertion",
    "InvalidInstance",
    "LemmaViolation",
    "ScarfError",
    "ScarfInstance",
    "ScarfSolution",
    "ScarfSolver",
    "StableMatchingSolver",
    "StepLimitExceeded",
    "StrongKernelSolver",
    "UnboundedDirection",
    "Unrepairable",
    "canonicalize",
    "cardinal_pivot",
    "is_subordinating",
    "ordinal_extensions",
    "solve",
    "solve_basis",
    "solve_stable_matching",
    "solve_strong_kernel",
    "validate_instance",
    "verify_solution",
]

__version__ = "0.1.0"
