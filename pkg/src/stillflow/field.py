"""Superposed velocity field evaluation, streamlines, and far-field checks.

The flow induced at a probe z by the whole configuration is
v(z) = conj((1/2 pi i) sum_b Gamma_b / (z - z_b)). Multiplying every
strength by i rotates this field pointwise by -90 degrees, so vortex
patterns and source/sink patterns of the same equilibrium are orthogonal
families. Far from a configuration with nonzero total strength, the field
approaches that of one singularity at the center of vorticity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ComplexArray,
    DELTA_MIN_DEFAULT,
    FloatArray,
    PointSet,
    as_positions,
    as_strength_values,
)
from .equilibrium import center_of_vorticity
from .errors import SingularPoint, UndefinedFarField

TERMINATIONS = ("step_limit", "window_exit", "singularity_approach", "stagnation")


@dataclass(frozen=True)
class Window:
    """Axis-aligned view rectangle."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("window rectangle is empty")

    def contains(self, z: complex) -> bool:
        return self.x_min <= z.real <= self.x_max and self.y_min <= z.imag <= self.y_max


@dataclass(frozen=True, eq=False)
class FieldGrid:
    """Velocities sampled on a lattice; singular nodes flagged, not NaN.

    velocity[j, i] corresponds to (xs[i], ys[j]); singular marks nodes
    within the separation floor of a singularity, where the velocity is
    reported as zero rather than an overflow.
    """

    window: Window
    xs: FloatArray
    ys: FloatArray
    velocity: ComplexArray
    singular: np.ndarray


@dataclass(frozen=True, eq=False)
class Streamline:
    vertices: ComplexArray
    terminated_by: str


def default_window(points, pad: float = 0.5) -> Window:
    """Configuration bounding box padded by `pad` of its extent per side."""
    z = as_positions(points)
    x_min, x_max = float(z.real.min()), float(z.real.max())
    y_min, y_max = float(z.imag.min()), float(z.imag.max())
    span = max(x_max - x_min, y_max - y_min, 1.0)
    return Window(
        x_min - pad * span, x_max + pad * span, y_min - pad * span, y_max + pad * span
    )


def _field(z, positions: ComplexArray, gamma: ComplexArray):
    probes = np.asarray(z, dtype=np.complex128)
    diff = probes[..., None] - positions
    return np.conj((gamma / diff).sum(axis=-1) / (2.0j * math.pi))


def velocity_at(points, strengths, z: complex, delta_min: float | None = None) -> complex:
    """Velocity of the superposed field at one probe.

    Raises
    ------
    SingularPoint
        If the probe is within the separation floor of a singularity
        (the field blows up as 1/distance there).
    """
    positions = as_positions(points)
    gamma = as_strength_values(strengths)
    if positions.size != gamma.size:
        raise ValueError(f"{positions.size} points but {gamma.size} strengths")
    floor = delta_min if delta_min is not None else (
        points.delta_min if isinstance(points, PointSet) else DELTA_MIN_DEFAULT
    )
    z = complex(z)
    dist = np.abs(z - positions)
    nearest = int(np.argmin(dist))
    if dist[nearest] < floor:
        raise SingularPoint(
            f"probe at {z} is within {dist[nearest]:.3e} of singularity {nearest}"
        )
    return complex(_field(z, positions, gamma))


def velocity_grid(points, strengths, window: Window, nx: int, ny: int) -> FieldGrid:
    """Sample the field on an nx-by-ny lattice over the window.

    Nodes that fall within the separation floor of a singularity are
    flagged and given velocity zero so downstream consumers never see
    non-finite values.
    """
    if nx < 2 or ny < 2:
        raise ValueError(f"need nx, ny >= 2, got {nx}, {ny}")
    positions = as_positions(points)
    gamma = as_strength_values(strengths)
    if positions.size != gamma.size:
        raise ValueError(f"{positions.size} points but {gamma.size} strengths")
    floor = points.delta_min if isinstance(points, PointSet) else DELTA_MIN_DEFAULT
    xs = np.linspace(window.x_min, window.x_max, nx)
    ys = np.linspace(window.y_min, window.y_max, ny)
    nodes = xs[None, :] + 1j * ys[:, None]
    dist = np.abs(nodes[..., None] - positions)
    singular = (dist < floor).any(axis=-1)
    safe = np.where(singular, nodes + 2.0 * floor * (1.0 + 1j), nodes)
    vel = _field(safe, positions, gamma)
    vel[singular] = 0.0
    for arr in (xs, ys, vel, singular):
        arr.setflags(write=False)
    return FieldGrid(window, xs, ys, vel, singular)


def trace_streamline(
    points,
    strengths,
    start: complex,
    step: float = 1e-2,
    max_steps: int = 10_000,
    window: Window | None = None,
    stagnation_tol: float = 1e-12,
) -> Streamline:
    """March a streamline through the frozen field with arclength RK4 steps.

    The advected direction is v/|v|, so vertices are spaced by `step`
    regardless of speed. Termination: leaving the window, exhausting
    max_steps, approaching a singularity closer than the larger of the
    step and ten separation floors (the path cannot be resolved past
    that), or hitting a stagnation point where the direction is undefined.

    Raises
    ------
    SingularPoint
        If the start itself is inside the singular zone.
    """
    positions = as_positions(points)
    gamma = as_strength_values(strengths)
    if window is None:
        window = default_window(points)
    floor = points.delta_min if isinstance(points, PointSet) else DELTA_MIN_DEFAULT
    approach = max(10.0 * floor, step)
    scale = float(np.abs(gamma).max())

    def direction(z):
        v = complex(_field(z, positions, gamma))
        speed = abs(v)
        if speed <= stagnation_tol * max(scale, 1.0):
            return None
        return v / speed

    z = complex(start)
    if float(np.abs(z - positions).min()) < floor:
        raise SingularPoint(f"streamline start {z} is inside the singular zone")
    vertices = [z]
    terminated = "step_limit"
    for _ in range(max_steps):
        if float(np.abs(z - positions).min()) < approach:
            terminated = "singularity_approach"
            break
        if not window.contains(z):
            terminated = "window_exit"
            break
        d1 = direction(z)
        if d1 is None:
            terminated = "stagnation"
            break
        d2 = direction(z + 0.5 * step * d1)
        d3 = direction(z + 0.5 * step * d2) if d2 is not None else None
        d4 = direction(z + step * d3) if d3 is not None else None
        if d2 is None or d3 is None or d4 is None:
            terminated = "stagnation"
            break
        z = z + (step / 6.0) * (d1 + 2.0 * d2 + 2.0 * d3 + d4)
        vertices.append(z)
    out = np.asarray(vertices, dtype=np.complex128)
    out.setflags(write=False)
    return Streamline(out, terminated)


def far_field_deviation(points, strengths, radius: float, samples: int = 64) -> float:
    """Worst relative mismatch against the equivalent single singularity.

    Probes on the circle of the given radius about the center of vorticity
    compare the configuration's field with that of one singularity of the
    total strength at the center; the returned value is
    max |v_config - v_single| / |v_single|. The residual multipole falls
    one power of radius faster than the field itself, so doubling the
    radius divides this measure by about four.

    Raises
    ------
    UndefinedFarField
        When the total strength cancels (no single-singularity far field).
    ValueError
        If the radius is inside three configuration diameters.
    """
    positions = as_positions(points)
    gamma = as_strength_values(strengths)
    total = complex(gamma.sum())
    if abs(total) <= 1e-9 * float(np.abs(gamma).sum()):
        raise UndefinedFarField("total strength cancels; far field decays faster than 1/r")
    center = center_of_vorticity(positions, gamma).value
    diameter = float(
        max(np.abs(positions[:, None] - positions[None, :]).max(), 0.0)
    )
    if radius < 3.0 * diameter:
        raise ValueError(
            f"radius {radius} is inside 3x the configuration diameter {diameter:.3g}"
        )
    angles = 2.0 * math.pi * np.arange(samples) / samples
    probes = center + radius * np.exp(1j * angles)
    v_conf = _field(probes, positions, gamma)
    v_single = np.conj((total / (probes - center)) / (2.0j * math.pi))
    return float((np.abs(v_conf - v_single) / np.abs(v_single)).max())
