"""Relative equilibria of three equal masses on a rotating meridian of the unit sphere.

The package computes, classifies and verifies rigid rotators under the
cotangent potential: the scalene and isosceles families, the critical arc,
contour data for the shape condition, and the arbitrary-mass, repulsive and
charged generalizations.
"""

__version__ = "0.1.0"

from .errors import (
    AntipodalPairError,
    AZeroCaseError,
    InternalInconsistencyError,
    MeridianError,
    NotARotatorError,
    OutOfFamilyRangeError,
    PreconditionError,
    SingularityError,
)
from .geometry import (
    Configuration,
    RotatorClassification,
    RotatorKind,
    Shape,
    arc_angles,
    classify,
    from_y,
    normalize_angle,
    to_y,
)
from .potential import (
    ATTRACTIVE,
    REPULSIVE,
    PotentialModel,
    Variant,
    attractivity_check,
    force_kernel,
    potential_derivative,
    potential_value,
)
from .shape_analysis import (
    RotationRate,
    ShapeKinetics,
    evaluate_f,
    evaluate_g,
    evaluate_h,
    kinetics,
    normalized_f,
    omega_and_s,
)
from .translation import reflect_configuration, relative_equilibrium, resolve_a_zero, shape_to_configuration
from .families import (
    ArcEnumeration,
    CriticalAngle,
    Equilibrium,
    FamilyRow,
    IsoscelesSpec,
    ScalenePair,
    critical_angle,
    enumerate_re_for_arc,
    rejected_cos2y,
    scalene_cos2y,
    scalene_family_table,
    solve_isosceles,
    solve_scalene,
)
from .contour import ContourGrid, ContourSet, Polyline, emit_contour, scan_and_trace
from .verify import (
    ResidualReport,
    appendix_regression,
    repulsive_shift_check,
    verify_configuration,
)
