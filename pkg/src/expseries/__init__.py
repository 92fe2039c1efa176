"""Interpolation by exponential series on convex domains: geometry, exponents, criterion."""
from .criterion import Decision, decide_solvability, domain_monotonicity_check, necessity_check
from .errors import ExpSeriesError, NearSingular, NotCertifiedError, ValidationError
from .exponents import (
    Angle,
    ExponentSequence,
    RayTail,
    check_condition8,
    in_angle,
    limit_directions,
    satisfies_separation,
    thin_sequence,
)
from .exppoly import (
    ExpPolynomial,
    count_zeros_sector_annulus,
    eval_p,
    hermite_membership,
    verify_left_bound,
    verify_sector_bound,
    zero_free_radius,
)
from .geometry import (
    PLANE,
    ConvexDomain,
    Direction,
    DirectionSet,
    Disc,
    HalfPlane,
    contact_directions,
    contains,
    disc,
    halfplane,
    polygon,
    rectangle,
    s_convex_hull,
    support_value,
)
from .interpolation import (
    CoeffModel,
    ExpSum,
    HermiteData,
    NodeSet,
    abs_convergence_margin,
    eval_expsum,
    hermite_matrix,
    solve_finite_section,
)
from .product import CanonicalProduct, condensation_index, derivative_at_zero, eval_G

__version__ = "0.1.0"
