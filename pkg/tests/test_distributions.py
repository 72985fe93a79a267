import math

import numpy as np
import pytest

from circstein import (
    DistributionSpec,
    Family,
    bingham,
    cardioid,
    periodic_quadrature,
    uniform,
    von_mises,
    wn_density_series,
    wn_density_triple_product,
    wn_score_series,
    wrap,
    wrapped_cauchy,
    wrapped_normal,
)
from circstein.special_functions import bessel_i0, bessel_i1

ALL_SIX = [
    uniform(),
    von_mises(0.0, 2.0),
    bingham(0.0, 1.0),
    cardioid(0.0, 0.3),
    wrapped_normal(0.0, 1.0),
    wrapped_cauchy(0.0, 1.0),
]


@pytest.mark.parametrize("dist", ALL_SIX, ids=lambda d: d.family.value)
def test_density_normalised(dist, grid):
    assert periodic_quadrature(dist.density, grid) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("dist", ALL_SIX, ids=lambda d: d.family.value)
def test_density_nonnegative(dist, grid):
    assert np.all(np.asarray(dist.density(grid.nodes)) >= 0.0)


@pytest.mark.parametrize("dist", ALL_SIX, ids=lambda d: d.family.value)
def test_score_matches_log_density_derivative(dist):
    thetas = np.array([-2.5, -1.0, 0.3, 1.7, 2.8])
    step = 1e-6
    fd = (np.log(dist.density(thetas + step)) - np.log(dist.density(thetas - step))) / (
        2.0 * step
    )
    assert np.max(np.abs(fd - np.asarray(dist.score(thetas)))) < 1e-7


def test_location_shifts_density():
    d = von_mises(1.2, 3.0)
    base = von_mises(0.0, 3.0)
    thetas = np.linspace(-3.0, 3.0, 11)
    assert np.allclose(d.density(thetas), base.density(thetas - 1.2))


class TestMeanAngle:
    def test_von_mises(self, grid):
        ma = von_mises(0.7, 2.0).mean_angle(grid)
        assert not ma.degenerate
        assert ma.angle == pytest.approx(0.7, abs=1e-10)
        assert ma.resultant_length == pytest.approx(
            bessel_i1(2.0) / bessel_i0(2.0), abs=1e-10
        )

    def test_uniform_degenerate(self, grid):
        ma = uniform(0.4).mean_angle(grid)
        assert ma.degenerate
        assert ma.angle == pytest.approx(0.4)
        assert ma.resultant_length < 1e-8

    def test_bingham_degenerate(self, grid):
        # antipodally symmetric: first trigonometric moment vanishes
        assert bingham(0.0, 1.0).mean_angle(grid).degenerate


class TestValidation:
    def test_positive_concentration_required(self):
        for ctor in (von_mises, bingham, wrapped_normal, wrapped_cauchy):
            with pytest.raises(ValueError):
                ctor(0.0, 0.0)
            with pytest.raises(ValueError):
                ctor(0.0, -1.0)

    def test_cardioid_range(self):
        cardioid(0.0, 0.5)
        cardioid(0.0, -0.5)
        with pytest.raises(ValueError):
            cardioid(0.0, 0.6)

    def test_location_wrapped_on_construction(self):
        assert von_mises(3 * math.pi, 1.0).location == math.pi
        assert von_mises(2 * math.pi + 0.3, 1.0).location == pytest.approx(0.3)


class TestWrappedNormal:
    @pytest.mark.parametrize("sigma2", [0.25, 1.0, 4.0])
    def test_series_product_duality(self, sigma2):
        thetas = np.linspace(-math.pi, math.pi, 101)[1:]
        assert np.max(
            np.abs(wn_density_series(thetas, sigma2) - wn_density_triple_product(thetas, sigma2))
        ) < 1e-12

    def test_score_series_matches_density(self):
        thetas = np.array([-2.0, -0.5, 0.9, 2.4])
        step = 1e-6
        fd = (
            np.log(wn_density_series(thetas + step, 0.7))
            - np.log(wn_density_series(thetas - step, 0.7))
        ) / (2.0 * step)
        assert np.max(np.abs(fd - wn_score_series(thetas, 0.7))) < 1e-8

    def test_score_variance_floor(self):
        with pytest.raises(ValueError):
            wn_score_series(0.0, 0.005)

    def test_invalid_sigma2(self):
        with pytest.raises(ValueError):
            wn_density_series(0.0, -1.0)
        with pytest.raises(ValueError):
            wn_density_triple_product(0.0, 0.0)


class TestCdfAndSampling:
    def test_cdf_total_mass(self, grid):
        for d in ALL_SIX:
            assert d.cdf(math.pi, grid) == pytest.approx(1.0, abs=1e-10)

    def test_cdf_uniform_midpoint(self, grid):
        assert uniform().cdf(0.0, grid) == pytest.approx(0.5, abs=1e-12)

    def test_sampling_deterministic(self, grid):
        d = von_mises(0.5, 2.0)
        a = d.sample(500, seed=3, grid=grid)
        b = d.sample(500, seed=3, grid=grid)
        assert np.array_equal(a, b)
        c = d.sample(500, seed=4, grid=grid)
        assert not np.array_equal(a, c)

    def test_samples_in_range(self, grid):
        xs = wrapped_cauchy(2.0, 0.5).sample(2000, seed=0, grid=grid)
        assert np.all(xs > -math.pi) and np.all(xs <= math.pi)

    def test_sampling_matches_cdf(self, grid):
        d = von_mises(0.0, 2.0)
        xs = np.sort(d.sample(20000, seed=1, grid=grid))
        ks = np.max(np.abs(d.cdf(xs, grid) - np.arange(1, 20001) / 20000))
        assert ks < 0.02

    def test_sample_size_validated(self, grid):
        with pytest.raises(ValueError):
            uniform().sample(0, seed=0, grid=grid)


class TestSerialisation:
    def test_round_trip(self):
        d = wrapped_normal(1.1, 0.6)
        assert DistributionSpec.from_json(d.to_json()) == d

    def test_unknown_family_rejected(self):
        with pytest.raises(ValueError):
            DistributionSpec.from_dict({"family": "gaussian"})

    def test_missing_family_rejected(self):
        with pytest.raises(ValueError):
            DistributionSpec.from_dict({"location": 0.0})


def test_centered_and_shifted():
    d = von_mises(1.0, 2.0)
    assert d.centered().location == 0.0
    assert d.shifted(0.5).location == pytest.approx(1.5)
    assert d.shifted(2 * math.pi).location == pytest.approx(1.0)
    assert d.shifted(0.5).concentration == d.concentration


def test_family_enum_values():
    assert {f.value for f in Family} == {
        "uniform",
        "von_mises",
        "bingham",
        "cardioid",
        "wrapped_normal",
        "wrapped_cauchy",
    }
