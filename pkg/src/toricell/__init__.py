"""Exact-arithmetic elliptic genera of toric varieties and divisor pairs."""

from .series import (
    ExpLattice,
    FracPoly,
    InterpolationInconsistent,
    LaurentPoly,
    NilTaylor,
    QSeries,
    interpolate_laurent,
)
from .theta import check_translation, eta_sq, theta_monomial, theta_nilpotent
from .toric import (
    Fan,
    FanError,
    FixedPointData,
    NonGenericSubgroup,
    PairCoefficients,
    fixed_point_data,
    intersection_number,
    q_trivial,
    resolve_surface,
    star_subdivide,
    validate_fan,
)
from .genus import (
    EquivariantGenus,
    GenusResult,
    LogCanonicalCoefficient,
    check_rigidity,
    check_vanishing_cy,
    ell_pair,
    ell_pair_equivariant,
    specialize,
    verify_blowup_invariance,
)
from .singular import (
    DegeneratePerturbation,
    PerturbationSpec,
    PerturbedGenus,
    PoleAtEpsilonZero,
    check_perturbation_independence,
    ell_singular_toric,
    limit_eps,
    limit_eps_by_samples,
    perturbed_ell,
    validate_perturbation,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
