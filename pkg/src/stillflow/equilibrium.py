"""Strength vectors that hold a configuration stationary.

A configuration is a fixed equilibrium for exactly the strength vectors in
the kernel of its interaction matrix. This module solves for those vectors,
verifies them via the residual, provides closed forms for two and three
points, and classifies individual singularities and the far field by the
signs of the strength components.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .core import (
    ComplexArray,
    ConfigurationMatrix,
    DELTA_MIN_DEFAULT,
    PointSet,
    StrengthVector,
    as_strength_values,
    build_matrix,
)
from .errors import DegenerateConfiguration, NoEquilibrium, ZeroStrengths

#: Every classification the decision table can produce. Real strength is
#: circulation (counterclockwise when positive), imaginary strength is
#: volume flux (outward when positive); mixtures spiral.
KINDS = (
    "vortex_ccw",
    "vortex_cw",
    "source",
    "sink",
    "spiral_source_ccw",
    "spiral_source_cw",
    "spiral_sink_ccw",
    "spiral_sink_cw",
    "null",
)

LEAD_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class EquilibriumSolution:
    """One equilibrium strength vector plus the kernel it came from.

    strengths is the first kernel basis vector, rescaled so its leading
    above-tolerance entry is exactly 1+0i. When the kernel has dimension
    above one, basis carries the full orthonormal set (columns).
    """

    strengths: StrengthVector
    residual: float
    nullity: int
    zero_eigenvalue_multiplicity: int
    basis: ComplexArray


@dataclass(frozen=True)
class FarFieldClass:
    total_strength: complex
    kind: str


@dataclass(frozen=True)
class CenterOfVorticity:
    """Strength-weighted centroid; undefined when the strengths cancel.

    moment is the raw weighted sum of positions, kept even when the
    normalizing total vanishes.
    """

    value: complex | None
    defined: bool
    moment: complex


def normalize_leading(values, tol: float = LEAD_TOL) -> StrengthVector:
    """Rescale so the first entry with |value| > tol * max|value| is 1+0i."""
    arr = as_strength_values(values)
    peak = float(np.abs(arr).max())
    if peak == 0.0:
        raise ZeroStrengths("cannot normalize an all-zero strength vector")
    lead = int(np.argmax(np.abs(arr) > tol * peak))
    return StrengthVector(arr / arr[lead])


def residual(a: ConfigurationMatrix, strengths) -> float:
    """Equilibrium defect |A Gamma| / |Gamma| in the 2-norm."""
    gamma = as_strength_values(strengths)
    m = a.entries if isinstance(a, ConfigurationMatrix) else np.asarray(a, dtype=np.complex128)
    if m.shape[1] != gamma.size:
        raise ValueError(f"matrix is {m.shape}, strengths have length {gamma.size}")
    norm = float(np.linalg.norm(gamma))
    if norm == 0.0:
        raise ZeroStrengths("residual of an all-zero strength vector is undefined")
    return float(np.linalg.norm(m @ gamma)) / norm


def solve_strengths(points, rel_tol: float = 1e-10) -> EquilibriumSolution:
    """Find strengths that make every point of the configuration stationary.

    The kernel of the interaction matrix is computed via the Jacobi SVD
    rank decision; the first basis vector, normalized to leading entry
    1+0i, is returned as the representative solution. Both the geometric
    kernel dimension and the algebraic count of near-zero eigenvalues are
    reported, since they differ on degenerate configurations.

    Raises
    ------
    NoEquilibrium
        If the kernel is trivial (possible only for even point counts).
    """
    if not isinstance(points, PointSet):
        points = PointSet(points)
    a = build_matrix(points)
    report = linalg.nullspace(a, rel_tol=rel_tol)
    if report.nullity == 0:
        raise NoEquilibrium(
            f"configuration of {points.n} points has a trivial kernel"
            f" (smallest singular value {report.sigma[-1]:.3e}"
            f" above threshold {report.threshold:.3e})"
        )
    strengths = normalize_leading(report.basis[:, 0])
    return EquilibriumSolution(
        strengths=strengths,
        residual=residual(a, strengths),
        nullity=report.nullity,
        zero_eigenvalue_multiplicity=linalg.zero_eigenvalue_multiplicity(a),
        basis=report.basis,
    )


def collinear_three_closed_form(x1: float, x2: float, x3: float) -> StrengthVector:
    """Equilibrium strengths for three points on the real axis.

    Returns (1, -(x3-x2)/(x3-x1), (x3-x2)/(x2-x1)) for x1 < x2 < x3. The
    middle strength opposes its neighbours; the symmetric case (0, 0.5, 1)
    gives (1, -0.5, 1).
    """
    xs = (float(x1), float(x2), float(x3))
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(xs[i] - xs[j]) < DELTA_MIN_DEFAULT:
                raise DegenerateConfiguration(f"abscissae {i} and {j} coincide")
    if not (xs[0] < xs[1] < xs[2]):
        raise ValueError(f"abscissae must be strictly increasing, got {xs}")
    g2 = -(xs[2] - xs[1]) / (xs[2] - xs[0])
    g3 = (xs[2] - xs[1]) / (xs[1] - xs[0])
    return StrengthVector(np.array([1.0, g2, g3], dtype=np.complex128))


def triangle_closed_form(z: complex) -> StrengthVector:
    """Equilibrium strengths for the triangle configuration (0, 1, z).

    The kernel of the 3x3 interaction matrix is spanned by
    (1/(z-1), -1/z, 1); the result is normalized to leading entry 1+0i.
    Every z off the real segment endpoints works, including collinear
    placements, where the result matches the three-point real formula.
    """
    z = complex(z)
    if abs(z) < DELTA_MIN_DEFAULT or abs(z - 1.0) < DELTA_MIN_DEFAULT:
        raise DegenerateConfiguration(f"triangle apex {z} collides with a base point")
    raw = np.array([1.0 / (z - 1.0), -1.0 / z, 1.0], dtype=np.complex128)
    return normalize_leading(raw)


def triangle_eigenvalues(z: complex) -> linalg.EigenResult:
    """Eigenvalues of the triangle configuration (0, 1, z) in factored form.

    The characteristic polynomial gives lambda = 0 and
    lambda = +/- i (1 - z + z^2) / (z (1 - z)). The factored numerator has
    a double root at the two equilateral apexes, so evaluating it directly
    avoids the cancellation that limits matrix-side eigensolvers to about
    1e-8 there, and lands at rounding level instead.
    """
    z = complex(z)
    if abs(z) < DELTA_MIN_DEFAULT or abs(z - 1.0) < DELTA_MIN_DEFAULT:
        raise DegenerateConfiguration(f"triangle apex {z} collides with a base point")
    root = 1j * (1.0 - z + z * z) / (z * (1.0 - z))
    lam = np.array([0.0 + 0.0j, root, -root])
    order = np.lexsort((np.angle(lam), -np.abs(lam)))
    out = lam[order]
    out.setflags(write=False)
    return linalg.EigenResult(out)


def _classify(s: complex, scale: float, tol: float) -> str:
    cut = tol * scale
    re, im = s.real, s.imag
    if abs(s) <= cut:
        return "null"
    if abs(im) <= cut:
        return "vortex_ccw" if re > 0.0 else "vortex_cw"
    if abs(re) <= cut:
        return "source" if im > 0.0 else "sink"
    radial = "source" if im > 0.0 else "sink"
    turn = "ccw" if re > 0.0 else "cw"
    return f"spiral_{radial}_{turn}"


def classify_singularity(gamma: complex, tol: float = 1e-6) -> str:
    """Flow kind at a single singularity from the sign pattern of its strength."""
    gamma = complex(gamma)
    return _classify(gamma, abs(gamma), tol)


def classify_far_field(strengths, tol: float = 1e-6) -> FarFieldClass:
    """Classify the aggregate far field of a strength vector.

    Far from the configuration the flow looks like one singularity of
    strength s = sum(Gamma); the decision table is the same as for a
    single point, with the tolerance scaled by the largest |Gamma| so the
    classification is scale-free. s below tolerance reports kind "null"
    (the far field decays faster than a single singularity's).
    """
    arr = as_strength_values(strengths)
    s = complex(arr.sum())
    scale = float(np.abs(arr).max()) if arr.size else 0.0
    return FarFieldClass(s, _classify(s, scale, tol))


def center_of_vorticity(points, strengths, tol: float = 1e-9) -> CenterOfVorticity:
    """Strength-weighted centroid sum(Gamma z) / sum(Gamma).

    When the total strength cancels below tol * sum|Gamma| the center is
    undefined (defined=False, value=None); the raw moment sum(Gamma z) is
    reported either way.
    """
    z = points.positions if isinstance(points, PointSet) else PointSet(points).positions
    gamma = as_strength_values(strengths)
    if z.size != gamma.size:
        raise ValueError(f"{z.size} points but {gamma.size} strengths")
    moment = complex((gamma * z).sum())
    total = complex(gamma.sum())
    if abs(total) <= tol * float(np.abs(gamma).sum()):
        return CenterOfVorticity(None, False, moment)
    return CenterOfVorticity(moment / total, True, moment)
