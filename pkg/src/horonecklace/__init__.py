"""Horoball necklaces around two full-sized horoballs in the upper-half-space model."""

from .core import (
    H_INFINITY,
    INFINITY,
    BoundaryPoint,
    Geodesic,
    GeometryError,
    Horoball,
    HoroballAtInfinity,
    PlaneContact,
    Tolerances,
    VerticalPlane,
    are_tangent,
    distance_to_infinity,
    horoball_distance,
    interiors_disjoint,
    meets_vertical_plane,
    tangent_line_angle,
    visual_angle,
)
from .family import (
    AngleReport,
    FamilyParam,
    NotInFamily,
    certificate_angle_sum,
    classify_solution,
    generate_family,
)
from .mobius import (
    MobiusMap,
    apply_boundary,
    apply_horoball,
    compose,
    elliptic_about_geodesic,
    half_turn,
    inverse,
    translation,
    vertical_rotation,
)
from .moves import (
    MoveOutcome,
    improve_to_equality,
    rotate_tangent_pair,
    step1_drop,
    step2_slide_eye,
    step3_extend_rotate,
    step4_inflate,
    step5_align,
)
from .necklace import (
    EyePair,
    Necklace,
    ValidationReport,
    crossing_beads,
    encircles,
    validate_necklace,
    winding_number,
)
from .search import FeasibilitySpec, SearchResult, feasibility_slack, search_necklace
from .two_eyes import (
    AngleDiagnostics,
    TwoEyesConfig,
    alpha_beta,
    check_hypotheses,
    equality_case,
)

__version__ = "0.1.0"
