"""Maximal-eigenpair solvers with globally valid initials.

Shifted-inverse and Rayleigh-quotient iterations for the dominant
eigenpair of irreducible nonnegative (and power-positive real or complex)
matrices, the minimal eigenpair of -Q for generator-form matrices, and a
specialized certified pipeline for tridiagonal generators.
"""

from ._kernels import ACCELERATED, FORCE_NUMPY, NUMBA_AVAILABLE
from .checks import (
    PrimitivityReport,
    complex_cw_upper,
    cw_bounds,
    default_power_cap,
    eig_oracle,
    is_complex_admissible,
    is_primitive,
    shift_a_to_q,
)
from .engines import (
    Eigenpair,
    IterationConfig,
    IterationStep,
    IterationTrace,
    convex_initial_shift,
    rqi_nonneg,
    rqi_q,
    sii_complex,
    sii_nonneg,
    sii_q,
)
from .errors import (
    MatrixFileError,
    MaxeigError,
    NonpositiveR,
    NotNormalized,
    OverflowGuard,
    PositivityViolation,
    RowSumViolation,
    SingularSystem,
    ZeroComponent,
)
from .linalg import (
    lu_solve,
    matvec,
    ratio_stats,
    rayleigh_quotient,
    thomas_solve,
    weighted_norm,
)
from .matrixio import load_matrix, save_matrix
from .models import (
    BranchingSpec,
    SingleBirthSpec,
    branching_q,
    fixture,
    single_birth_q,
)
from .tables import generate_table
from .tridiag import (
    HData,
    MuPhi,
    TridiagonalQ,
    TridiagResult,
    compute_h,
    compute_mu_phi,
    delta_k,
    h_transform,
    tridiag_pipeline,
    tridiagonal_from_dense,
)

__version__ = "0.1.0"

__all__ = [
    "ACCELERATED",
    "FORCE_NUMPY",
    "NUMBA_AVAILABLE",
    "BranchingSpec",
    "Eigenpair",
    "HData",
    "IterationConfig",
    "IterationStep",
    "IterationTrace",
    "MatrixFileError",
    "MaxeigError",
    "MuPhi",
    "NonpositiveR",
    "NotNormalized",
    "OverflowGuard",
    "PositivityViolation",
    "PrimitivityReport",
    "RowSumViolation",
    "SingleBirthSpec",
    "SingularSystem",
    "TridiagResult",
    "TridiagonalQ",
    "ZeroComponent",
    "branching_q",
    "complex_cw_upper",
    "compute_h",
    "compute_mu_phi",
    "convex_initial_shift",
    "cw_bounds",
    "default_power_cap",
    "delta_k",
    "eig_oracle",
    "fixture",
    "generate_table",
    "h_transform",
    "is_complex_admissible",
    "is_primitive",
    "load_matrix",
    "lu_solve",
    "matvec",
    "ratio_stats",
    "rayleigh_quotient",
    "rqi_nonneg",
    "rqi_q",
    "save_matrix",
    "shift_a_to_q",
    "sii_complex",
    "sii_nonneg",
    "sii_q",
    "single_birth_q",
    "thomas_solve",
    "tridiag_pipeline",
    "tridiagonal_from_dense",
    "weighted_norm",
]
