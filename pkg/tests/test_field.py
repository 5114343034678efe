"""Velocity sampling, streamlines, far-field comparison."""

import numpy as np
import pytest

from stillflow import (
    PointSet,
    SingularPoint,
    StrengthVector,
    UndefinedFarField,
    Window,
    default_window,
    far_field_deviation,
    solve_strengths,
    trace_streamline,
    velocity_at,
    velocity_grid,
)

from test_core import random_points

TWO_PI = 2 * np.pi


class TestVelocityAt:
    def test_unit_source_pushes_outward(self):
        v = velocity_at([0j], [TWO_PI * 1j], 1 + 0j)
        assert v == pytest.approx(1 + 0j, abs=1e-14)

    def test_unit_vortex_swirls_ccw(self):
        v = velocity_at([0j], [TWO_PI + 0j], 1 + 0j)
        assert v == pytest.approx(1j, abs=1e-14)

    def test_decays_inversely_with_distance(self):
        for r in (1.0, 2.0, 5.0):
            v = velocity_at([0j], [TWO_PI + 0j], r + 0j)
            assert abs(v) == pytest.approx(1.0 / r, rel=1e-12)

    def test_superposition_is_linear(self):
        rng = np.random.default_rng(91)
        z = random_points(rng, 5)
        g1 = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        g2 = rng.standard_normal(5) + 1j * rng.standard_normal(5)
        probe = 3 + 3j
        va = velocity_at(PointSet(z), StrengthVector(g1), probe)
        vb = velocity_at(PointSet(z), StrengthVector(g2), probe)
        vc = velocity_at(PointSet(z), StrengthVector(g1 + g2), probe)
        assert vc == pytest.approx(va + vb, abs=1e-12)

    def test_probe_on_singularity_rejected(self):
        with pytest.raises(SingularPoint):
            velocity_at([0j, 1 + 0j], [1 + 0j, 1 + 0j], 1 + 0j)
        with pytest.raises(SingularPoint):
            velocity_at([0j, 1 + 0j], [1 + 0j, 1 + 0j], 1 + 1e-10j)

    def test_rotated_strengths_turn_field_clockwise(self):
        rng = np.random.default_rng(92)
        z = random_points(rng, 7)
        sol = solve_strengths(PointSet(z))
        for _ in range(100):
            probe = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if np.abs(probe - z).min() < 1e-3:
                continue
            v = velocity_at(PointSet(z), sol.strengths, probe)
            w = velocity_at(PointSet(z), sol.strengths.rotated(), probe)
            assert abs(w) == pytest.approx(abs(v), rel=1e-12)
            # perpendicular: the real part of v conj(w) cancels
            assert abs((v * np.conj(w)).real) <= 1e-12 * max(abs(v) ** 2, 1e-30)


class TestVelocityGrid:
    def test_shapes_and_orientation(self):
        grid = velocity_grid([0j, 1 + 1j], [1 + 0j, 1 + 0j],
                             Window(-1.0, 2.0, -1.0, 1.0), nx=7, ny=5)
        assert grid.xs.shape == (7,) and grid.ys.shape == (5,)
        assert grid.velocity.shape == (5, 7)
        assert grid.singular.shape == (5, 7)
        v_direct = velocity_at([0j, 1 + 1j], [1 + 0j, 1 + 0j],
                               complex(grid.xs[3], grid.ys[2]))
        assert grid.velocity[2, 3] == pytest.approx(v_direct, abs=1e-14)

    def test_nodes_on_singularities_flagged_and_zeroed(self):
        grid = velocity_grid([0j, 1 + 0j], [1 + 0j, 1 + 0j],
                             Window(-1.0, 1.0, -1.0, 1.0), nx=3, ny=3)
        assert grid.singular.sum() == 2
        assert grid.singular[1, 1] and grid.singular[1, 2]
        assert grid.velocity[1, 1] == 0 and grid.velocity[1, 2] == 0
        assert np.isfinite(grid.velocity).all()

    def test_arrays_read_only(self):
        grid = velocity_grid([0j, 1 + 0j], [1 + 0j, 1 + 0j],
                             Window(-1.0, 1.0, -1.0, 1.0), nx=3, ny=3)
        with pytest.raises(ValueError):
            grid.velocity[0, 0] = 0

    def test_rejects_degenerate_lattice(self):
        with pytest.raises(ValueError):
            velocity_grid([0j, 1 + 0j], [1 + 0j, 1 + 0j],
                          Window(-1.0, 1.0, -1.0, 1.0), nx=1, ny=3)


class TestDefaultWindow:
    def test_pads_bounding_box(self):
        w = default_window([0j, 1 + 2j])
        assert w.x_min == pytest.approx(-1.0) and w.x_max == pytest.approx(2.0)
        assert w.y_min == pytest.approx(-1.0) and w.y_max == pytest.approx(3.0)

    def test_minimum_span_for_tight_configurations(self):
        w = default_window([0j, 0.01 + 0j])
        assert w.x_max - w.x_min >= 1.0

    def test_contains(self):
        w = Window(-1.0, 1.0, -2.0, 2.0)
        assert w.contains(0j)
        assert not w.contains(1.5 + 0j)
        assert not w.contains(3j)


class TestStreamlines:
    def test_vortex_orbit_stays_circular(self):
        line = trace_streamline([0j], [TWO_PI + 0j], 1 + 0j, step=1e-2,
                                max_steps=700, window=Window(-2.0, 2.0, -2.0, 2.0))
        assert line.terminated_by == "step_limit"
        assert len(line.vertices) == 701
        assert np.abs(np.abs(line.vertices) - 1.0).max() <= 1e-8
        # a full revolution passes back near the start
        gaps = np.abs(line.vertices[1:] - 1.0)
        assert gaps.min() <= 1e-2

    def test_source_ray_exits_window(self):
        line = trace_streamline([0j], [TWO_PI * 1j], 0.1 + 0j, step=1e-2,
                                window=Window(-1.0, 1.0, -1.0, 1.0))
        assert line.terminated_by == "window_exit"
        z = line.vertices
        assert np.abs(z.imag).max() <= 1e-12
        assert np.all(np.diff(z.real) > 0)
        assert z.real[-1] >= 1.0

    def test_stagnation_point_between_equal_vortices(self):
        line = trace_streamline([-1 + 0j, 1 + 0j], [TWO_PI + 0j, TWO_PI + 0j], 0j)
        assert line.terminated_by == "stagnation"
        assert len(line.vertices) == 1

    def test_sink_attracts_to_singular_zone(self):
        line = trace_streamline([0j], [-TWO_PI * 1j], 0.055 + 0j, step=1e-2)
        assert line.terminated_by == "singularity_approach"
        assert np.abs(line.vertices[-1]) <= 1e-2 + 1e-12
        assert np.all(np.diff(np.abs(line.vertices)) < 0)

    def test_start_inside_singular_zone_rejected(self):
        with pytest.raises(SingularPoint):
            trace_streamline([0j], [TWO_PI + 0j], 1e-10 + 0j)

    def test_step_limit(self):
        line = trace_streamline([0j], [TWO_PI + 0j], 1 + 0j, max_steps=10,
                                window=Window(-2.0, 2.0, -2.0, 2.0))
        assert line.terminated_by == "step_limit"
        assert len(line.vertices) == 11


class TestFarField:
    def test_relative_deviation_quarters_when_radius_doubles(self):
        ps = PointSet([0j, 0.5 + 0j, 1 + 0j])
        sv = StrengthVector([1, -0.5, 1])
        d10 = far_field_deviation(ps, sv, 10.0)
        d20 = far_field_deviation(ps, sv, 20.0)
        assert 3.5 <= d10 / d20 <= 4.5

    def test_deviation_shrinks_with_radius(self):
        ps = PointSet([0j, 0.5 + 0j, 1 + 0j])
        sv = StrengthVector([1, -0.5, 1])
        d = [far_field_deviation(ps, sv, r) for r in (5.0, 10.0, 20.0, 40.0)]
        assert all(a > b for a, b in zip(d, d[1:]))
        assert d[-1] <= 1e-3

    def test_rejects_radius_inside_near_zone(self):
        ps = PointSet([0j, 0.5 + 0j, 1 + 0j])
        sv = StrengthVector([1, -0.5, 1])
        with pytest.raises(ValueError):
            far_field_deviation(ps, sv, 2.0)

    def test_cancelling_total_has_no_far_field(self):
        z = np.exp(2j * np.pi * np.arange(7) / 7)
        sol = solve_strengths(PointSet(z))
        with pytest.raises(UndefinedFarField):
            far_field_deviation(PointSet(z), sol.strengths, 50.0)
