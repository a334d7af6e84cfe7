"""Monogenic functions in commutative associative algebras in Cartan form."""

from .algebra_core import (
    AlgElem, AlgebraError, CartanTable, DimensionMismatch, NotInvertible, Violation, basis,
    format_element, functional, invert, mul, table_from_json, table_to_json, unit, validate_table,
)
from .charsys import (
    LAPLACE, CharSystem, OrderBoundExceeded, PdeSpec, evaluate_system, is_reduction,
    projected_char_system, symbolic_char_expand,
)
from .gaussian import GaussianRational
from .monogenic import (
    Exponential, HypothesisError, MonogenicFn, Point3, PoleError, Polynomial, PresetMismatch,
    ResolventExpansion, TaylorTable, eval_closed_form, eval_monogenic, jet, project_component,
    resolvent_eval, resolvent_expansion, singular_lines, xi,
)
from .poly import SymbolicPoly
from .reduction import (
    ReducedAlgebra, TripleError, VarTriple, lemma3_independence, reduced_algebra, reduced_triple,
    verify_theorem1,
)
from .verify import (
    FdConfig, VerificationReport, check_monogenic, fd_partial, pde_residual, sample_points,
    verify_theorem2,
)

__version__ = "0.1.0"
