"""Exact intersection theory and Seshadri certificates on blown-up ruled surfaces."""

from .curves import (
    BoundCheck,
    CurveClassification,
    EnumerationBounds,
    Verdict,
    classify_negative_class,
    self_intersection_bound_check,
    enumerate_minus_one_classes,
    is_minus_one_class,
    is_rigid_class,
    xu_filter,
)
from .errors import (
    ConditionalHypothesisError,
    DimensionMismatch,
    DomainError,
    InvalidSurface,
    PreconditionError,
    SeshadriError,
    UnsupportedComparison,
    WindowEmptyError,
)
from .exactnum import QuadraticValue, is_perfect_square, quad_cmp, sqrt_symbolic
from .lattice import (
    DivisorClass,
    ExtendedDivisorClass,
    SurfaceParams,
    arithmetic_genus,
    canonical_class,
    intersect,
    make_surface,
    strict_transform,
)
from .nbs import certified_threshold, multipoint_conjectural, nbs_check, r_threshold
from .positivity import decompose_good_form, is_ample_base, is_ample_uniform, is_good_form, nonneg_on_candidates
from .seshadri import (
    SeshadriCertificate,
    base_bundle_default,
    construct_pair,
    find_r_window,
    irrationality_witness,
    seshadri_certify,
    seshadri_upper_bound,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
