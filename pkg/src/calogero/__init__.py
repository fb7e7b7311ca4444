"""Exact closed-form propagator and eigenfunctions of the Calogero model.

The package evaluates the scattering eigenfunctions of the trap-free
inverse-square model, the harmonic-trap propagator built from them, and the
exact rational coefficient tables behind the finite pair-correlation
expansion, together with an exact-arithmetic oracle that recovers those
tables from the eigenvalue equation alone.
"""

__version__ = "0.1.0"

from .coefficients import (
    LAURENT_MONOMIAL,
    PRODUCT_OF_F,
    CoefficientTable,
    ConjectureViolation,
    c2_closed,
    c2_table,
    c3_closed,
    c3_table,
    clique_count,
    default_table,
    ell1_conjecture_table,
    f_sequence,
    laurent_table,
    product_to_laurent,
)
from .combinatorics import (
    MAX_PARTICLES,
    factorial_ratio,
    pair_indices,
    pair_poly_coefficients,
    signed_permutations,
)
from .evolution import (
    ConvergenceWarning,
    QuadratureGrid,
    WavePacket,
    evolve,
    evolve_field2,
    evolve_with_estimate,
    norm_drift2,
    packet_value,
)
from .oracle import (
    DegenerateSamplingError,
    GaussianRational,
    InconsistentSystemError,
    OracleVerificationError,
    SingularSampleError,
    residual_rows,
    solve_coefficients,
    verify_table,
)
from .propagator import (
    CausticError,
    KernelPoint,
    free_kernel,
    kernel,
    kernel_at,
    kernel_explicit,
    kernel_l0,
    mehler,
)
from .wavefunction import (
    AccuracyWarning,
    MIN_SEPARATION,
    ModelParams,
    SingularityError,
    f_descendant_check,
    f_poly,
    pair_variable,
    psi,
    psi2_bessel,
    script_f,
    spherical_zjl,
    vandermonde,
)

__all__ = [
    "AccuracyWarning",
    "CausticError",
    "CoefficientTable",
    "ConjectureViolation",
    "ConvergenceWarning",
    "DegenerateSamplingError",
    "GaussianRational",
    "InconsistentSystemError",
    "KernelPoint",
    "LAURENT_MONOMIAL",
    "MAX_PARTICLES",
    "MIN_SEPARATION",
    "ModelParams",
    "OracleVerificationError",
    "PRODUCT_OF_F",
    "QuadratureGrid",
    "SingularSampleError",
    "SingularityError",
    "WavePacket",
    "c2_closed",
    "c2_table",
    "c3_closed",
    "c3_table",
    "clique_count",
    "default_table",
    "ell1_conjecture_table",
    "evolve",
    "evolve_field2",
    "evolve_with_estimate",
    "f_descendant_check",
    "f_poly",
    "f_sequence",
    "factorial_ratio",
    "free_kernel",
    "kernel",
    "kernel_at",
    "kernel_explicit",
    "kernel_l0",
    "laurent_table",
    "mehler",
    "norm_drift2",
    "packet_value",
    "pair_indices",
    "pair_poly_coefficients",
    "pair_variable",
    "product_to_laurent",
    "psi",
    "psi2_bessel",
    "residual_rows",
    "script_f",
    "signed_permutations",
    "solve_coefficients",
    "spherical_zjl",
    "vandermonde",
    "verify_table",
]
