"""Six circular distribution families with densities, scores and sampling.

Families: uniform, von Mises, Bingham, cardioid, wrapped normal and wrapped
Cauchy.  Each exposes a Lebesgue density on (-pi, pi], the log-density
derivative (score), the mean angle with its resultant length, a tabulated
CDF and deterministic inverse-CDF sampling.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circle_core import (
    CumulativeIntegral,
    QuadratureGrid,
    TWO_PI,
    trig_moment,
    wrap,
)
from .errors import NumericError

__all__ = [
    "Family",
    "DistributionSpec",
    "MeanAngle",
    "uniform",
    "von_mises",
    "bingham",
    "cardioid",
    "wrapped_normal",
    "wrapped_cauchy",
    "wn_density_series",
    "wn_density_triple_product",
    "wn_score_series",
]

_WN_MIN_SIGMA2 = 0.01
_WN_SCORE_CAP = 10**6
_WN_PRODUCT_CAP = 10**5


class Family(str, enum.Enum):
    UNIFORM = "uniform"
    VON_MISES = "von_mises"
    BINGHAM = "bingham"
    CARDIOID = "cardioid"
    WRAPPED_NORMAL = "wrapped_normal"
    WRAPPED_CAUCHY = "wrapped_cauchy"


@dataclass(frozen=True)
class MeanAngle:
    angle: float
    resultant_length: float
    degenerate: bool


def wn_density_series(theta, sigma2: float):
    """Wrapped normal density as a lattice sum of Gaussian copies."""
    if sigma2 <= 0:
        raise ValueError("wrapped normal needs sigma2 > 0")
    th = wrap(theta)
    th = np.asarray(th, dtype=float)
    sigma = math.sqrt(sigma2)
    kmax = int(math.ceil((6.0 * sigma + math.pi) / TWO_PI))
    total = np.zeros_like(th)
    for k in range(-kmax, kmax + 1):
        total += np.exp(-((th + TWO_PI * k) ** 2) / (2.0 * sigma2))
    total /= sigma * math.sqrt(TWO_PI)
    return float(total) if total.ndim == 0 else total


def wn_density_triple_product(theta, sigma2: float):
    """Wrapped normal density via its infinite-product representation."""
    if sigma2 <= 0:
        raise ValueError("wrapped normal needs sigma2 > 0")
    th = np.asarray(theta, dtype=float)
    c = np.cos(th)
    prod = np.ones_like(c) / TWO_PI
    n = 0
    while True:
        n += 1
        if n > _WN_PRODUCT_CAP:
            raise NumericError(
                f"wn_density_triple_product: no convergence after {n - 1} factors"
            )
        b = math.exp(-sigma2 * (n - 0.5))
        a = math.exp(-sigma2 * n)
        prod *= (1.0 - a) * (1.0 + b * b + 2.0 * c * b)
        if b < 1e-18:
            break
    return float(prod) if prod.ndim == 0 else prod


def wn_score_series(theta, sigma2: float):
    """Log-density derivative of the wrapped normal, summed to convergence."""
    if sigma2 < _WN_MIN_SIGMA2:
        raise ValueError(f"wrapped normal score needs sigma2 >= {_WN_MIN_SIGMA2}")
    th = np.asarray(theta, dtype=float)
    s = np.sin(th)
    c = np.cos(th)
    total = np.zeros_like(th)
    for n in range(1, _WN_SCORE_CAP + 1):
        denom = math.cosh(sigma2 * (n - 0.5)) + c
        term = -s / denom
        total += term
        if np.max(np.abs(term)) < 1e-16:
            break
    else:
        raise NumericError("wn_score_series: term cap exceeded")
    return float(total) if total.ndim == 0 else total


@dataclass(frozen=True)
class DistributionSpec:
    """A circular distribution family with location and concentration.

    ``concentration`` means kappa for the von Mises, zeta for the Bingham,
    sigma^2 for the wrapped normal, gamma for the wrapped Cauchy and rho for
    the cardioid; it is ignored for the uniform.
    """

    family: Family
    location: float = 0.0
    concentration: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "location", wrap(float(self.location)))
        c = float(self.concentration)
        object.__setattr__(self, "concentration", c)
        fam = self.family
        if fam in (Family.VON_MISES, Family.BINGHAM) and c <= 0:
            raise ValueError(f"{fam.value}: concentration must be > 0, got {c}")
        if fam is Family.WRAPPED_NORMAL and c <= 0:
            raise ValueError(f"wrapped_normal: sigma2 must be > 0, got {c}")
        if fam is Family.WRAPPED_CAUCHY and c <= 0:
            raise ValueError(f"wrapped_cauchy: gamma must be > 0, got {c}")
        if fam is Family.CARDIOID and abs(c) > 0.5:
            raise ValueError(f"cardioid: |rho| must be <= 1/2, got {c}")

    # -- evaluation ------------------------------------------------------

    def density(self, theta):
        th = np.asarray(theta, dtype=float) - self.location
        fam = self.family
        if fam is Family.UNIFORM:
            out = np.full_like(th, 1.0 / TWO_PI)
        elif fam is Family.VON_MISES:
            # log-space evaluation keeps large kappa (Bayesian posteriors)
            # finite: p = exp(kappa cos(th) - log(2 pi) - log I0(kappa))
            kappa = self.concentration
            from .special_functions import _log_i0

            out = np.exp(kappa * np.cos(th) - math.log(TWO_PI) - _log_i0(kappa))
        elif fam is Family.BINGHAM:
            zeta = self.concentration
            from .special_functions import bessel_i0

            norm = TWO_PI * math.exp(zeta / 2.0) * bessel_i0(zeta / 2.0)
            out = np.exp(zeta * np.cos(th) ** 2) / norm
        elif fam is Family.CARDIOID:
            rho = self.concentration
            out = (1.0 + 2.0 * rho * np.cos(th)) / TWO_PI
        elif fam is Family.WRAPPED_NORMAL:
            out = wn_density_triple_product(th, self.concentration)
            out = np.asarray(out, dtype=float)
        else:  # wrapped Cauchy
            gamma = self.concentration
            out = (
                math.sinh(gamma)
                / (TWO_PI * (math.cosh(gamma) - np.cos(th)))
            )
            out = np.asarray(out, dtype=float)
        return float(out) if out.ndim == 0 else out

    def score(self, theta):
        """Derivative of the log density, (log p)'."""
        th = np.asarray(theta, dtype=float) - self.location
        fam = self.family
        if fam is Family.UNIFORM:
            out = np.zeros_like(th)
        elif fam is Family.VON_MISES:
            out = -self.concentration * np.sin(th)
        elif fam is Family.BINGHAM:
            out = -self.concentration * np.sin(2.0 * th)
        elif fam is Family.CARDIOID:
            rho = self.concentration
            out = -2.0 * rho * np.sin(th) / (1.0 + 2.0 * rho * np.cos(th))
        elif fam is Family.WRAPPED_NORMAL:
            out = np.asarray(wn_score_series(th, self.concentration), dtype=float)
        else:
            gamma = self.concentration
            out = -np.sin(th) / (math.cosh(gamma) - np.cos(th))
            out = np.asarray(out, dtype=float)
        return float(out) if out.ndim == 0 else out

    # -- derived quantities ----------------------------------------------

    def mean_angle(self, grid: QuadratureGrid | None = None) -> MeanAngle:
        """Mean angle (argument of the first trigonometric moment).

        If the resultant length is below 1e-8 the argument is numerically
        undefined (uniform, Bingham); the location parameter is returned
        with the degenerate flag set.
        """
        grid = grid or QuadratureGrid()
        z = trig_moment(self, 1, grid)
        r = abs(z)
        if r < 1e-8:
            return MeanAngle(self.location, r, True)
        return MeanAngle(wrap(math.atan2(z.imag, z.real)), r, False)

    def centered(self) -> "DistributionSpec":
        """The same family expressed in its own mean-angle coordinates."""
        return DistributionSpec(self.family, 0.0, self.concentration)

    def shifted(self, delta: float) -> "DistributionSpec":
        """Rotate the distribution by ``delta`` radians."""
        return DistributionSpec(self.family, wrap(self.location + delta), self.concentration)

    def cdf(self, theta, grid: QuadratureGrid | None = None):
        """Cumulative distribution function, integrating from -pi."""
        grid = grid or QuadratureGrid()
        cum = _density_cumulative(self, grid.n_nodes)
        out = np.clip(cum.at(theta), 0.0, 1.0)
        return out

    def sample(self, n: int, seed: int, grid: QuadratureGrid | None = None) -> np.ndarray:
        """Draw ``n`` deterministic inverse-CDF samples with the given seed."""
        if n < 1:
            raise ValueError("sample: n must be >= 1")
        grid = grid or QuadratureGrid()
        cum = _density_cumulative(self, grid.n_nodes)
        xs = np.concatenate(([-np.pi], grid.nodes))
        fs = np.concatenate(([0.0], cum.node_values()))
        fs = np.maximum.accumulate(fs) / max(fs[-1], 1e-300)
        u = np.random.default_rng(seed).random(n)
        return wrap(np.interp(u, fs, xs))

    # -- serialisation ---------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "family": self.family.value,
                "location": self.location,
                "concentration": self.concentration,
            }
        )

    @staticmethod
    def from_dict(obj: dict) -> "DistributionSpec":
        try:
            fam = Family(obj["family"])
        except (KeyError, ValueError) as exc:
            raise ValueError(f"unknown distribution family: {obj.get('family')!r}") from exc
        return DistributionSpec(
            fam,
            float(obj.get("location", 0.0)),
            float(obj.get("concentration", 0.0)),
        )

    @staticmethod
    def from_json(text: str) -> "DistributionSpec":
        return DistributionSpec.from_dict(json.loads(text))


@lru_cache(maxsize=128)
def _density_cumulative(spec: DistributionSpec, n_nodes: int) -> CumulativeIntegral:
    grid = QuadratureGrid(n_nodes)
    return CumulativeIntegral(spec.density, grid)


# -- convenience constructors ------------------------------------------------

def uniform(location: float = 0.0) -> DistributionSpec:
    return DistributionSpec(Family.UNIFORM, location, 0.0)


def von_mises(location: float, kappa: float) -> DistributionSpec:
    return DistributionSpec(Family.VON_MISES, location, kappa)


def bingham(location: float, zeta: float) -> DistributionSpec:
    return DistributionSpec(Family.BINGHAM, location, zeta)


def cardioid(location: float, rho: float) -> DistributionSpec:
    return DistributionSpec(Family.CARDIOID, location, rho)


def wrapped_normal(location: float, sigma2: float) -> DistributionSpec:
    return DistributionSpec(Family.WRAPPED_NORMAL, location, sigma2)


def wrapped_cauchy(location: float, gamma: float) -> DistributionSpec:
    return DistributionSpec(Family.WRAPPED_CAUCHY, location, gamma)
