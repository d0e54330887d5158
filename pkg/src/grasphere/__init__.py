"""Constantly curved holomorphic two-spheres in G(2,n), exactly.

Construction of the closed-form coefficient families, exact verification of
the defining polynomial identity, curvature, fullness and ramification of
the resulting curves, and the supporting harmonic-sequence machinery.
"""

from .scalar import CQuad, QuadScalar, RadicalBasis, quad_is_nonneg, quad_mul, quad_normalize
from .polycore import (
    BiPoly,
    CPoly,
    HoloVec,
    RatBiFunc,
    content_and_primitive,
    is_proportional,
    log_laplacian,
    norm_sq,
    wedge,
)
from .harmonic import (
    OsculatingTower,
    SequenceInvariants,
    ell_sequence,
    harmonic_next,
    osculating_tower,
    sequence_invariants,
    veronese,
    veronese_invariants,
)
from .family import (
    FamilyParams,
    SymRatMatrix,
    build_family,
    coeff_alpha_product,
    coeff_c,
    verify_eq_42_43,
    verify_identity_11,
)
from .spectral import (
    ScaledGram,
    SpectralFactorization,
    closed_form_lambdas,
    exact_rank,
    exact_section,
    find_singular_t,
    jacobi_eigen,
    reconstruct_section,
    scaled_gram,
    spectral_factorize,
)
from .curve import (
    CurveReport,
    GrassCurve,
    build_curve,
    build_report,
    det_a1_sq,
    gauss_curvature,
    linear_fullness,
    plucker_norm_sq,
    second_ff,
    unramified_check,
)

__version__ = "0.1.0"
