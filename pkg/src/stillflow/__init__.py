"""Stationary configurations of logarithmic point singularities in the plane.

A configuration of N points with complex strengths is a fixed equilibrium
exactly when the strength vector lies in the kernel of the skew-symmetric
interaction matrix with entries 1/(z_a - z_b). This package builds that
matrix, extracts its kernel and singular spectrum, classifies the
singularities and the far field, generates configurations on lines,
circles, and polar curves, and verifies equilibria by direct integration.
"""

from .core import (
    ConfigurationMatrix,
    DELTA_MIN_DEFAULT,
    HermitianSplit,
    PointSet,
    StrengthVector,
    build_matrix,
    hermitian_split,
    normality_defect,
)
from .dynamics import (
    OrbitParams,
    TrajectorySet,
    collapse_time,
    fixedness_check,
    integrate,
    integrate_tracer,
    point_velocities,
    single_orbit,
)
from .equilibrium import (
    CenterOfVorticity,
    EquilibriumSolution,
    FarFieldClass,
    center_of_vorticity,
    classify_far_field,
    classify_singularity,
    collinear_three_closed_form,
    normalize_leading,
    residual,
    solve_strengths,
    triangle_closed_form,
    triangle_eigenvalues,
)
from .errors import (
    CollapseReached,
    CollisionAbort,
    ConvergenceFailure,
    DegenerateConfiguration,
    EmptySpectrum,
    InvalidDistribution,
    NoEquilibrium,
    OddDimension,
    SingularPoint,
    StillflowError,
    UndefinedFarField,
    ZeroStrengths,
)
from .field import (
    FieldGrid,
    Streamline,
    Window,
    default_window,
    far_field_deviation,
    trace_streamline,
    velocity_at,
    velocity_grid,
)
from .generators import (
    CurveSpec,
    RegionSpec,
    generate_circle,
    generate_collinear,
    generate_polar_curve,
    generate_random_plane,
)
from .linalg import (
    EigenResult,
    RankReport,
    SvdResult,
    determinant,
    eigen_residuals,
    eigenvalues,
    nullspace,
    pfaffian,
    pfaffian_determinant_check,
    svd,
    zero_eigenvalue_multiplicity,
)
from .spectrum import SpectralReport, normalize_spectrum, shannon_entropy, spectral_report

__version__ = "0.1.0"

__all__ = [
    "CenterOfVorticity",
    "CollapseReached",
    "CollisionAbort",
    "ConfigurationMatrix",
    "ConvergenceFailure",
    "CurveSpec",
    "DELTA_MIN_DEFAULT",
    "DegenerateConfiguration",
    "EigenResult",
    "EmptySpectrum",
    "EquilibriumSolution",
    "FarFieldClass",
    "FieldGrid",
    "HermitianSplit",
    "InvalidDistribution",
    "NoEquilibrium",
    "OddDimension",
    "OrbitParams",
    "PointSet",
    "RankReport",
    "RegionSpec",
    "SingularPoint",
    "SpectralReport",
    "StillflowError",
    "Streamline",
    "StrengthVector",
    "SvdResult",
    "TrajectorySet",
    "UndefinedFarField",
    "Window",
    "ZeroStrengths",
    "build_matrix",
    "center_of_vorticity",
    "classify_far_field",
    "classify_singularity",
    "collapse_time",
    "collinear_three_closed_form",
    "default_window",
    "determinant",
    "eigen_residuals",
    "eigenvalues",
    "far_field_deviation",
    "fixedness_check",
    "generate_circle",
    "generate_collinear",
    "generate_polar_curve",
    "generate_random_plane",
    "hermitian_split",
    "integrate",
    "integrate_tracer",
    "normality_defect",
    "normalize_leading",
    "normalize_spectrum",
    "nullspace",
    "pfaffian",
    "pfaffian_determinant_check",
    "point_velocities",
    "residual",
    "shannon_entropy",
    "single_orbit",
    "solve_strengths",
    "spectral_report",
    "svd",
    "trace_streamline",
    "triangle_closed_form",
    "triangle_eigenvalues",
    "velocity_at",
    "velocity_grid",
    "zero_eigenvalue_multiplicity",
]
