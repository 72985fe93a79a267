"""Stein operator, inverse operator, Stein kernels and the alpha function.

Every function here that takes an angle expects it in the distribution's own
mean-angle coordinates (the chart in which the mean angle sits at 0); the
distribution is centred internally before any integral is formed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circle_core import (
    CumulativeIntegral,
    QuadratureGrid,
    interval_integral,
    periodic_quadrature,
)
from .distributions import DistributionSpec, Family
from .errors import ContractError, NumericError
from .special_functions import erfi

__all__ = [
    "KernelMethod",
    "KernelEvaluation",
    "SteinSolution",
    "AlphaEvaluation",
    "stein_operator",
    "inverse_operator",
    "classical_kernel",
    "circular_kernel_numeric",
    "circular_kernel_closed",
    "kernel_table",
    "stein_solution",
    "alpha",
    "euclidean_mean",
]

_DENSITY_GUARD = 1e-12
_FD_STEP = 1e-6


class KernelMethod(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class KernelEvaluation:
    theta: float
    tau_classical: float
    tau_circular: float
    method: KernelMethod


@dataclass(frozen=True)
class SteinSolution:
    """Solution of the Stein equation tabulated on a grid.

    ``f_values`` holds f_h at the grid nodes, ``g_values`` holds f_h / tau_c
    with the value at pi filled in by one-sided continuous extension.
    """

    grid: QuadratureGrid
    h_mean: float
    f_values: np.ndarray
    g_values: np.ndarray


@dataclass(frozen=True)
class AlphaEvaluation:
    theta: float
    alpha: float
    alpha_sin: float


@lru_cache(maxsize=256)
def _sin_cumulative(spec: DistributionSpec, n_nodes: int) -> CumulativeIntegral:
    grid = QuadratureGrid(n_nodes)
    p = spec.centered().density
    return CumulativeIntegral(lambda y: np.sin(y) * p(y), grid)


@lru_cache(maxsize=256)
def _linear_cumulative(spec: DistributionSpec, n_nodes: int) -> CumulativeIntegral:
    grid = QuadratureGrid(n_nodes)
    p = spec.centered().density
    return CumulativeIntegral(lambda y: y * p(y), grid)


def euclidean_mean(dist: DistributionSpec, grid: QuadratureGrid | None = None) -> float:
    """Euclidean mean nu = int x p(x) dx in mean-angle coordinates."""
    grid = grid or QuadratureGrid()
    return _linear_cumulative(dist, grid.n_nodes).total


def stein_operator(dist: DistributionSpec, f, theta: float, fprime=None) -> float:
    """Apply the Stein operator of ``dist`` to ``f`` at ``theta``.

    On the support this is f'(theta) + score(theta) * f(theta); off the
    support the operator acts as the identity on f.  ``fprime`` may be
    omitted, in which case a centred finite difference is used.
    """
    p = dist.density(theta)
    if p <= 0.0:
        return float(f(theta))
    if fprime is None:
        df = (f(theta + _FD_STEP) - f(theta - _FD_STEP)) / (2.0 * _FD_STEP)
    else:
        df = fprime(theta)
    return float(df + dist.score(theta) * f(theta))


def inverse_operator(
    dist: DistributionSpec, h, theta: float, grid: QuadratureGrid | None = None
) -> float:
    """Inverse Stein operator applied to a centred test function.

    ``h`` must satisfy E_P[h] = 0 (checked to 1e-8); evaluation is in the
    distribution's mean-angle coordinates.
    """
    grid = grid or QuadratureGrid()
    centred = dist.centered()
    p = centred.density
    # interval rule: h need not be periodic (e.g. h = -Id for the classical kernel)
    mean_h = interval_integral(
        lambda x: np.asarray(h(x), dtype=float) * p(x), -np.pi, np.pi
    )
    if abs(mean_h) > 1e-8:
        raise ContractError(
            f"inverse_operator: E_P[h] = {mean_h:.3e} exceeds the 1e-8 centring tolerance"
        )
    p_theta = p(theta)
    if p_theta <= _DENSITY_GUARD:
        return float(h(theta))
    integral = interval_integral(lambda y: np.asarray(h(y), dtype=float) * p(y), -np.pi, theta)
    return float((integral + h(-np.pi) * p(np.pi)) / p_theta)


def classical_kernel(dist: DistributionSpec, theta, grid: QuadratureGrid | None = None):
    """Classical Stein kernel tau in mean-angle coordinates.

    tau(x) = (1/p(x)) [ int_{-pi}^x (nu - y) p(y) dy + (nu + pi) p(-pi) ]
    with nu the Euclidean mean of the wrapped coordinate.
    """
    grid = grid or QuadratureGrid()
    centred = dist.centered()
    lin = _linear_cumulative(dist, grid.n_nodes)
    dens = _centered_density_cumulative(dist, grid.n_nodes)
    nu = lin.total
    p_seam = centred.density(np.pi)
    th = np.asarray(theta, dtype=float)
    p = np.asarray(centred.density(th), dtype=float)
    value = (nu * dens.at(th) - lin.at(th) + (nu + np.pi) * p_seam) / p
    return float(value) if np.ndim(theta) == 0 else value


@lru_cache(maxsize=256)
def _centered_density_cumulative(spec: DistributionSpec, n_nodes: int) -> CumulativeIntegral:
    grid = QuadratureGrid(n_nodes)
    return CumulativeIntegral(spec.centered().density, grid)


def circular_kernel_numeric(
    dist: DistributionSpec, theta, grid: QuadratureGrid | None = None
):
    """Circular Stein kernel tau_c(x) = (1/p(x)) int_x^pi sin(y) p(y) dy."""
    grid = grid or QuadratureGrid()
    cum = _sin_cumulative(dist, grid.n_nodes)
    th = np.asarray(theta, dtype=float)
    p = np.asarray(dist.centered().density(th), dtype=float)
    tail = cum.total - cum.at(th)
    value = tail / np.maximum(p, _DENSITY_GUARD)
    return float(value) if np.ndim(theta) == 0 else value


def circular_kernel_closed(dist: DistributionSpec, theta):
    """Closed-form circular Stein kernel (von Mises, uniform, Bingham,
    wrapped Cauchy); raises for the families without a closed form."""
    th = np.asarray(theta, dtype=float)
    fam = dist.family
    if fam is Family.VON_MISES:
        kappa = dist.concentration
        value = -np.expm1(kappa * (-1.0 - np.cos(th))) / kappa
    elif fam is Family.UNIFORM:
        value = 1.0 + np.cos(th)
    elif fam is Family.BINGHAM:
        zeta = dist.concentration
        root = math.sqrt(zeta)
        erfi_vals = np.vectorize(erfi)(root * np.cos(th))
        value = (
            math.sqrt(math.pi)
            / (2.0 * root)
            * np.exp(-zeta * np.cos(th) ** 2)
            * (erfi_vals + erfi(root))
        )
    elif fam is Family.WRAPPED_CAUCHY:
        gamma = dist.concentration
        cg = math.cosh(gamma)
        value = (cg - np.cos(th)) * np.log((cg + 1.0) / (cg - np.cos(th)))
    else:
        raise ValueError(
            f"no closed-form circular kernel for family {fam.value}; "
            "use circular_kernel_numeric"
        )
    return float(value) if np.ndim(theta) == 0 else value


def kernel_table(
    dist: DistributionSpec, thetas, grid: QuadratureGrid | None = None
) -> list[KernelEvaluation]:
    """Tabulate classical and circular kernels at the given angles."""
    grid = grid or QuadratureGrid()
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    tau = classical_kernel(dist, thetas, grid)
    has_closed = dist.family in (
        Family.VON_MISES,
        Family.UNIFORM,
        Family.BINGHAM,
        Family.WRAPPED_CAUCHY,
    )
    if has_closed:
        tau_c = circular_kernel_closed(dist, thetas)
        method = KernelMethod.CLOSED_FORM
    else:
        tau_c = circular_kernel_numeric(dist, thetas, grid)
        method = KernelMethod.QUADRATURE
    return [
        KernelEvaluation(float(t), float(a), float(c), method)
        for t, a, c in zip(thetas, tau, np.atleast_1d(tau_c))
    ]


def stein_solution(dist: DistributionSpec, h, grid: QuadratureGrid | None = None) -> SteinSolution:
    """Solve the Stein equation T_p f_h = h - E[h] on the grid.

    Also returns g_h = f_h / tau_c, with the removable 0/0 at pi filled by
    continuous extension from the adjacent node.
    """
    grid = grid or QuadratureGrid()
    centred = dist.centered()
    p_func = centred.density
    h_mean = periodic_quadrature(lambda x: np.asarray(h(x), dtype=float) * p_func(x), grid)
    cum = CumulativeIntegral(
        lambda y: (np.asarray(h(y), dtype=float) - h_mean) * p_func(y), grid
    )
    nodes = grid.nodes
    p_nodes = np.asarray(p_func(nodes), dtype=float)
    f_vals = cum.node_values() / p_nodes
    tau_c = circular_kernel_numeric(dist, nodes, grid)
    interior = tau_c[:-1]
    if np.any(interior < _DENSITY_GUARD):
        bad = nodes[:-1][interior < _DENSITY_GUARD][0]
        raise NumericError(f"stein_solution: circular kernel below guard at theta={bad}")
    g_vals = np.empty_like(f_vals)
    g_vals[:-1] = f_vals[:-1] / interior
    g_vals[-1] = g_vals[-2]
    return SteinSolution(grid, h_mean, f_vals, g_vals)


def alpha(dist: DistributionSpec, theta: float, grid: QuadratureGrid | None = None) -> AlphaEvaluation:
    """The alpha ratio of Stein-kernel numerators in mean-angle coordinates.

    alpha has removable singularities at +-pi; angles within half a grid
    spacing of the seam are rejected, where the analytic envelope
    |alpha * sin| <= 2 pi should be used instead.
    """
    grid = grid or QuadratureGrid()
    eps = 0.5 * grid.spacing
    if math.pi - abs(theta) < eps:
        raise ValueError(
            "alpha: angle within the exclusion band at +-pi; "
            "use the 2*pi envelope for |alpha * sin| there"
        )
    lin = _linear_cumulative(dist, grid.n_nodes)
    sin_cum = _sin_cumulative(dist, grid.n_nodes)
    numerator = -lin.at(theta)  # Euclidean mean is 0 in these coordinates
    denominator = -sin_cum.at(theta)
    if abs(denominator) < 1e-300:
        raise NumericError("alpha: vanishing denominator away from the seam")
    a = numerator / denominator
    return AlphaEvaluation(float(theta), float(a), float(a * math.sin(theta)))
