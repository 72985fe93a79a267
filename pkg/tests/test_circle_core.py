import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from circstein import (
    CumulativeIntegral,
    QuadratureGrid,
    interval_integral,
    periodic_derivative,
    periodic_quadrature,
    to_mu_coordinates,
    trig_moment,
    von_mises,
    wrap,
)
from circstein.special_functions import bessel_i0, bessel_i1


class TestWrap:
    def test_seam_convention(self):
        assert wrap(-math.pi) == math.pi
        assert wrap(math.pi) == math.pi
        assert wrap(3 * math.pi) == math.pi

    def test_identity_on_interior(self):
        assert wrap(0.0) == 0.0
        assert wrap(1.5) == 1.5
        assert wrap(-3.0) == -3.0

    def test_array_input(self):
        out = wrap(np.array([0.0, 2 * math.pi, -math.pi]))
        assert np.allclose(out, [0.0, 0.0, math.pi])

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            wrap(float("nan"))
        with pytest.raises(ValueError):
            wrap(float("inf"))

    @given(st.floats(-50.0, 50.0))
    def test_range_half_open(self, x):
        w = wrap(x)
        assert -math.pi < w <= math.pi

    @given(st.floats(-50.0, 50.0))
    def test_idempotent(self, x):
        assert wrap(wrap(x)) == wrap(x)

    @given(st.floats(-10.0, 10.0), st.integers(-3, 3))
    def test_period_invariance(self, x, k):
        assert wrap(x + 2 * math.pi * k) == pytest.approx(wrap(x), abs=1e-9)


def test_to_mu_coordinates_sends_mu_to_zero():
    for mu in (-2.0, 0.0, 1.3, math.pi):
        assert to_mu_coordinates(mu, mu) == 0.0
    assert to_mu_coordinates(1.0, 0.5) == pytest.approx(0.5)


class TestQuadratureGrid:
    def test_nodes_exclude_minus_pi_include_pi(self, grid):
        nodes = grid.nodes
        assert nodes[0] > -math.pi
        assert nodes[-1] == math.pi
        assert len(nodes) == grid.n_nodes

    def test_weight_and_spacing(self, grid):
        assert grid.weight == pytest.approx(2 * math.pi / grid.n_nodes)
        assert grid.spacing == grid.weight

    def test_too_few_nodes_rejected(self):
        with pytest.raises(ValueError):
            QuadratureGrid(1)


def test_periodic_quadrature_cos_squared(grid):
    assert periodic_quadrature(lambda x: np.cos(x) ** 2, grid) == pytest.approx(
        math.pi, abs=1e-12
    )


def test_periodic_quadrature_total_mass(grid):
    d = von_mises(0.3, 2.0)
    assert periodic_quadrature(d.density, grid) == pytest.approx(1.0, abs=1e-12)


def test_trig_moment_von_mises(grid):
    # E[e^{iX}] = e^{i mu} I1(kappa) / I0(kappa)
    z = trig_moment(von_mises(0.0, 2.0), 1, grid)
    assert z.real == pytest.approx(bessel_i1(2.0) / bessel_i0(2.0), abs=1e-12)
    assert z.imag == pytest.approx(0.0, abs=1e-12)


def test_trig_moment_rejects_nonpositive_order(grid):
    with pytest.raises(ValueError):
        trig_moment(von_mises(0.0, 1.0), 0, grid)


class TestIntervalIntegral:
    def test_exponential(self):
        assert interval_integral(np.exp, 0.0, 1.0) == pytest.approx(
            math.e - 1.0, abs=1e-14
        )

    def test_orientation_antisymmetry(self):
        fwd = interval_integral(np.sin, -1.0, 2.0)
        assert interval_integral(np.sin, 2.0, -1.0) == pytest.approx(-fwd, abs=1e-15)

    def test_empty_interval(self):
        assert interval_integral(np.exp, 0.7, 0.7) == 0.0


class TestCumulativeIntegral:
    def test_matches_antiderivative(self, grid):
        cum = CumulativeIntegral(np.cos, grid)
        for theta in (-3.0, -1.2, 0.0, 0.4, 2.9, math.pi):
            assert cum.at(theta) == pytest.approx(math.sin(theta), abs=1e-13)
        assert np.max(np.abs(cum.node_values() - np.sin(grid.nodes))) < 1e-13
        assert cum.total == pytest.approx(0.0, abs=1e-13)

    def test_array_evaluation(self, grid):
        cum = CumulativeIntegral(np.cos, grid)
        thetas = np.array([-2.0, 0.1, 1.0])
        assert np.allclose(cum.at(thetas), np.sin(thetas), atol=1e-13)

    def test_out_of_range_rejected(self, grid):
        cum = CumulativeIntegral(np.cos, grid)
        with pytest.raises(ValueError):
            cum.at(3.5)


def test_periodic_derivative_of_sin(grid):
    d = periodic_derivative(np.sin(grid.nodes), grid)
    assert np.max(np.abs(d - np.cos(grid.nodes))) < 1e-10


def test_periodic_derivative_length_check(grid):
    with pytest.raises(ValueError):
        periodic_derivative(np.zeros(7), grid)
