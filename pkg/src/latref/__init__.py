"""Lattice-based reformulation of integer linear equality systems.

The pipeline: compute a reduced kernel basis and a particular solution of
A x = b, split the basis by column norms, and rewrite the system as
P x = P x0 + T mu.  Knapsack rows additionally get a two-generator
decomposition with integer-width and Frobenius-number machinery; the
solver module measures the effect on branch-and-bound feasibility proofs.
"""

from .exact import (
    DimensionError,
    DomainError,
    GramSchmidtData,
    IntMatrix,
    RankError,
    det,
    extended_gcd,
    gram_schmidt,
    identity,
    mat_mul,
    mat_vec,
    rational_solve,
    transpose,
)
from .knapsack import (
    Decomposition,
    FrobeniusBound,
    FrobeniusUndefinedError,
    ResourceLimitError,
    ValidationError,
    WidthAnalysis,
    WidthValue,
    frobenius_exact,
    frobenius_lower_bound,
    integer_width,
    make_decomposition,
    representable_table,
    width_bounds,
    width_q_shift_check,
)
from .lattice import (
    HnfResult,
    IntegerSolver,
    KernelSolveResult,
    LLLParams,
    hnf,
    is_lll_reduced,
    kernel_and_solution,
    kernel_basis,
    lattice_hnf,
    lll_reduce,
    solve_integer,
)
from .reformulate import (
    BasisSplit,
    DetectionResult,
    EqualitySystem,
    EquivalenceReport,
    ExtendedFormulation,
    FixedSplit,
    IntegerInfeasibleError,
    IntegralityError,
    RatioSplit,
    build_extended,
    detect_decomposition,
    dual_kernel,
    project_affine,
    solve_multipliers,
    split_basis,
    verify_formulation_equivalence,
)
from .solver import (
    BnbConfig,
    BnbResult,
    ComparisonTable,
    LpProblem,
    LpResult,
    bnb_feasibility,
    compare_formulations,
    gen_market_split,
    lp_solve,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
