import math

import numpy as np
import pytest

from circstein import (
    QuadratureGrid,
    circular_w1,
    empirical_w1,
    uniform,
    von_mises,
    wrapped_cauchy,
    wrapped_normal,
)


def test_zero_on_identical_inputs(grid):
    assert circular_w1(von_mises(0.2, 3.0), von_mises(0.2, 3.0), grid).value < 1e-9


def test_symmetry(grid):
    p, q = von_mises(0.0, 1.0), wrapped_normal(0.5, 1.0)
    assert circular_w1(p, q, grid).value == pytest.approx(
        circular_w1(q, p, grid).value, abs=1e-10
    )


def test_rotation_invariance(grid):
    p, q = von_mises(0.0, 2.0), wrapped_cauchy(0.5, 1.0)
    base = circular_w1(p, q, grid).value
    rotated = circular_w1(p.shifted(1.1), q.shifted(1.1), grid).value
    # rotations move the CDF tables off the shared grid, so agreement is
    # limited by the grid resolution rather than machine precision
    assert rotated == pytest.approx(base, abs=1e-6)


def test_uniform_is_rotation_fixed_point(grid):
    # rotating the uniform law does nothing, so the distance is zero
    assert circular_w1(uniform(0.0), uniform(1.0), grid).value < 1e-9


def test_concentrated_rotation_distance(grid):
    # for highly concentrated laws, rotating by delta moves mass by ~delta
    val = circular_w1(von_mises(0.0, 200.0), von_mises(0.3, 200.0), grid).value
    assert val == pytest.approx(0.3, abs=5e-3)


def test_triangle_inequality(grid):
    a, b, c = uniform(), von_mises(0.0, 1.0), wrapped_normal(0.0, 1.0)
    ab = circular_w1(a, b, grid).value
    bc = circular_w1(b, c, grid).value
    ac = circular_w1(a, c, grid).value
    assert ac <= ab + bc + 1e-8


def test_bounded_by_circle_diameter(grid):
    val = circular_w1(von_mises(0.0, 50.0), von_mises(math.pi, 50.0), grid).value
    assert val <= math.pi + 1e-8


def test_shift_search_agrees_with_median(grid):
    p, q = von_mises(0.0, 2.0), wrapped_normal(0.8, 0.5)
    fast = circular_w1(p, q, grid)
    slow = circular_w1(p, q, grid, shift_search=True)
    assert slow.value == pytest.approx(fast.value, abs=1e-6)


def test_grid_refinement_stability(grid):
    p, q = uniform(), von_mises(0.0, 1.0)
    coarse = circular_w1(p, q, grid).value
    fine = circular_w1(p, q, QuadratureGrid(2 * grid.n_nodes)).value
    assert abs(coarse - fine) < 1e-6


def test_computation_carries_cdf_tables(grid):
    res = circular_w1(uniform(), von_mises(0.0, 1.0), grid)
    assert res.F_p.shape == (grid.n_nodes,)
    assert res.F_q.shape == (grid.n_nodes,)
    assert res.F_p[-1] == pytest.approx(1.0, abs=1e-12)


class TestEmpirical:
    def test_identical_inputs_small(self, grid):
        est, se = empirical_w1(von_mises(0.0, 2.0), von_mises(0.0, 2.0), 2000, seed=0)
        assert est < 0.05

    def test_sample_size_floor(self):
        with pytest.raises(ValueError):
            empirical_w1(uniform(), uniform(), 100, seed=0)

    def test_deterministic_given_seed(self, grid):
        a = empirical_w1(uniform(), von_mises(0.0, 1.0), 1000, seed=5, replicates=3)
        b = empirical_w1(uniform(), von_mises(0.0, 1.0), 1000, seed=5, replicates=3)
        assert a == b

    def test_matches_oracle(self, grid):
        p, q = von_mises(0.0, 5.0), von_mises(0.4, 5.0)
        est, se = empirical_w1(p, q, 5000, seed=1)
        exact = circular_w1(p, q, grid).value
        assert abs(est - exact) <= 2.0 * se
