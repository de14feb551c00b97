"""Finite rings, (weakly) nil-clean decompositions and their structure theory."""

from .errors import (
    BudgetExceeded,
    InvalidExpr,
    NotCentralIdempotent,
    OrderOverflow,
    PreconditionViolated,
    RingMismatch,
    Singular,
    SixNotNilpotent,
    StructuredUnsupported,
    WeakRingError,
)
from .expr import Matrix, Product, Quotient, Skew, Triangular, TrivExt, Zn, parse
from .rings import Element, FiniteRing, build, verify_axioms
from .predicates import ClassificationReport, classify
from .elements import WncDecomposition, wnc_decompositions
from .theorems import TheoremCheckResult, run_all

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "InvalidExpr", "NotCentralIdempotent", "OrderOverflow", "PreconditionViolated",
    "RingMismatch", "Singular", "SixNotNilpotent", "StructuredUnsupported", "WeakRingError",
    "Matrix", "Product", "Quotient", "Skew", "Triangular", "TrivExt", "Zn", "parse",
    "Element", "FiniteRing", "build", "verify_axioms",
    "ClassificationReport", "classify", "WncDecomposition", "wnc_decompositions",
    "TheoremCheckResult", "run_all",
]
