"""Deterministic, seedable generation of point configurations.

Lines, circles, polar curves (four-petal flower r = cos 2theta and figure
eight r = cos^2 theta), and uniform rectangles. All randomness goes through
numpy's default PCG64 generator so a (generator, n, seed) triple always
reproduces the identical PointSet, bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import PointSet
from .errors import DegenerateConfiguration

#: Dense table resolution for arclength inversion.
ARCLENGTH_SAMPLES = 100_000

#: Redraw attempts for random placements before giving up.
RETRY_CAP = 50

CURVES = ("flower", "figure_eight", "custom")
CURVE_DISTRIBUTIONS = ("even_arclength", "even_parameter", "random_parameter")


@dataclass(frozen=True)
class CurveSpec:
    """A polar curve z = r(theta) e^{i(theta + phase)} plus placement rule.

    Negative radius reflects through the origin (signed-radius convention),
    which is what draws all four petals of the flower. A custom curve is a
    finite (theta, r) table covering [0, 2pi], interpolated linearly.
    """

    curve: str
    distribution: str = "even_arclength"
    phase: float = 0.0
    samples: tuple = ()

    def __post_init__(self):
        if self.curve not in CURVES:
            raise ValueError(f"curve must be one of {CURVES}, got {self.curve!r}")
        if self.distribution not in CURVE_DISTRIBUTIONS:
            raise ValueError(
                f"distribution must be one of {CURVE_DISTRIBUTIONS}, got {self.distribution!r}"
            )
        if self.curve == "custom":
            table = np.asarray(self.samples, dtype=np.float64)
            if table.ndim != 2 or table.shape[1] != 2 or table.shape[0] < 2:
                raise ValueError("custom curve needs a table of (theta, r) rows")
            if np.any(np.diff(table[:, 0]) <= 0.0):
                raise ValueError("custom curve thetas must be strictly increasing")
            if table[0, 0] > 0.0 or table[-1, 0] < 2.0 * np.pi:
                raise ValueError("custom curve must cover [0, 2pi]")

    def radius_at(self, theta):
        theta = np.asarray(theta, dtype=np.float64)
        if self.curve == "flower":
            return np.cos(2.0 * theta)
        if self.curve == "figure_eight":
            return np.cos(theta) ** 2
        table = np.asarray(self.samples, dtype=np.float64)
        return np.interp(theta, table[:, 0], table[:, 1])


@dataclass(frozen=True)
class RegionSpec:
    """Axis-aligned rectangle with the seed for uniform draws inside it."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    seed: int = 0

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("region rectangle is empty")


def _retry(draw, what: str) -> PointSet:
    last = None
    for _ in range(RETRY_CAP):
        try:
            return PointSet(draw())
        except DegenerateConfiguration as exc:
            last = exc
    raise DegenerateConfiguration(f"{what}: no admissible draw in {RETRY_CAP} attempts ({last})")


def generate_collinear(n: int, distribution: str = "even", seed: int | None = None) -> PointSet:
    """Points on the real segment [0, 1].

    even: the uniform grid k/(n-1). random: endpoints pinned at 0 and 1
    with n-2 sorted uniform interior draws.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if distribution == "even":
        return PointSet(np.linspace(0.0, 1.0, n).astype(np.complex128))
    if distribution != "random":
        raise ValueError(f"distribution must be 'even' or 'random', got {distribution!r}")
    rng = np.random.default_rng(seed)

    def draw():
        inner = np.sort(rng.uniform(0.0, 1.0, n - 2))
        return np.concatenate([[0.0], inner, [1.0]]).astype(np.complex128)

    return _retry(draw, f"collinear n={n}")


def generate_circle(
    n: int,
    distribution: str = "even",
    radius: float = 1.0,
    phase: float = 0.0,
    seed: int | None = None,
) -> PointSet:
    """Points on a circle, either the n-th roots of unity pattern
    z_k = radius e^{i(2 pi k / n + phase)} or sorted uniform random angles."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if radius <= 0.0:
        raise ValueError(f"radius must be positive, got {radius}")
    if distribution == "even":
        k = np.arange(n)
        return PointSet(radius * np.exp(1j * (2.0 * np.pi * k / n + phase)))
    if distribution != "random":
        raise ValueError(f"distribution must be 'even' or 'random', got {distribution!r}")
    rng = np.random.default_rng(seed)

    def draw():
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, n))
        return radius * np.exp(1j * (angles + phase))

    return _retry(draw, f"circle n={n}")


def _arclength_table(spec: CurveSpec):
    """Cumulative arclength s(theta) on a dense uniform grid, by the
    trapezoid rule on the polar speed sqrt(r'^2 + r^2)."""
    theta = np.linspace(0.0, 2.0 * np.pi, ARCLENGTH_SAMPLES + 1)
    r = spec.radius_at(theta)
    dr = np.gradient(r, theta)
    speed = np.hypot(dr, r)
    ds = 0.5 * (speed[1:] + speed[:-1]) * np.diff(theta)
    s = np.concatenate([[0.0], np.cumsum(ds)])
    return theta, s


def generate_polar_curve(spec: CurveSpec, n: int, seed: int | None = None) -> PointSet:
    """Points on a polar curve, placed according to spec.distribution.

    even_arclength inverts the cumulative arclength table at equal
    increments; even_parameter takes theta_k = 2 pi k / n; random_parameter
    draws sorted uniform thetas. Placements whose points collide (curves
    pass through the origin) raise DegenerateConfiguration; random draws
    are retried first.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")

    def place(theta):
        return spec.radius_at(theta) * np.exp(1j * (theta + spec.phase))

    if spec.distribution == "even_parameter":
        theta = 2.0 * np.pi * np.arange(n) / n
        return PointSet(place(theta))
    if spec.distribution == "even_arclength":
        grid, s = _arclength_table(spec)
        targets = s[-1] * np.arange(n) / n
        theta = np.interp(targets, s, grid)
        return PointSet(place(theta))
    rng = np.random.default_rng(seed)

    def draw():
        return place(np.sort(rng.uniform(0.0, 2.0 * np.pi, n)))

    return _retry(draw, f"{spec.curve} n={n}")


def generate_random_plane(n: int, region: RegionSpec) -> PointSet:
    """Independent uniform draws over the region's rectangle."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    rng = np.random.default_rng(region.seed)

    def draw():
        x = rng.uniform(region.x_min, region.x_max, n)
        y = rng.uniform(region.y_min, region.y_max, n)
        return x + 1j * y

    return _retry(draw, f"random plane n={n}")
