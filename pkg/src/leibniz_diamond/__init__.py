"""Exact computations with the Diamond Lie algebras and Leibniz algebras built over them."""
from .algebra import (
    AlgebraTable,
    CheckReport,
    LinearMap,
    bracket_eval,
    center,
    check_leibniz,
    check_lie,
    ideal_closure,
    left_annihilator,
    quotient_algebra,
    right_annihilator,
    squares_span,
    subalgebra,
    verify_iso,
)
from .catalog import complexify_diamond, diamond_complex, diamond_real, heisenberg
from .exactmath import ExactMatrix, GaussianRational, Subspace, kernel, rref, solve
from .extensions import (
    Cocycle,
    CohomologyReport,
    ExtensionProblem,
    build_extension,
    coboundary_space,
    cocycle_constraints,
    cocycle_space,
    cohomology,
    theorem1_split_check,
    theorem2_table,
)
from .reps import (
    MatrixRep,
    ModuleAction,
    action_table_sl,
    action_table_sp,
    check_faithful,
    check_rep_homomorphism,
    check_right_module,
    check_traceless,
    invariant_forms,
    module_from_rep,
    phi_sl,
    phi_sp,
)

__version__ = "0.1.0"
