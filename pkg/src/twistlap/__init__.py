"""Exact eigenfunctions of the twisted Laplacian on constant-curvature surfaces.

The surface is the disc (``kappa < 0``), the plane (``kappa = 0``) or the
sphere chart (``kappa > 0``); ``nu`` is the magnetic coupling. Everything is
computed over the rationals, so identities are checked by exact equality.
"""
from .algebra import (
    BiPoly,
    DomainError,
    ExpWeight,
    PowerWeight,
    UniPoly,
    WeightedFn,
    WeightMismatchError,
    as_rational,
    canonicalize,
    pochhammer,
    wf_equal,
)
from .limits import ConvergenceReport, hermite_limit_probe, route_crosscheck, weight_limit_check
from .operators import (
    D_power,
    OperatorReport,
    ladder_chain,
    nabla,
    nabla_star,
    twisted_laplacian,
    verify_claim_D,
    verify_factorization,
    verify_intertwining,
)
from .params import InvalidParamsError, LevelRangeError, SurfaceMagneticParams, validate_params
from .polynomials import (
    P,
    P_via_D,
    P_via_jacobi,
    P_via_ladder,
    P_via_mixed_rodrigues,
    Route,
    UndefinedConstantError,
    complex_hermite,
    disc_polynomial,
    jacobi,
    rodrigues_constant,
)
from .spectral import (
    DIVERGENT,
    PiRational,
    eigenfunction,
    eigenvalue,
    gram_matrix,
    inner_product,
    level_spec,
    norm_squared,
    radial_moment,
    verify_eigen,
)

__version__ = "0.1.0"
