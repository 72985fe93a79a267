"""Angle arithmetic on the unit circle and periodic quadrature.

Angles live in the half-open interval (-pi, pi] with -pi identified with pi.
All integration in the package goes through the two primitives defined here:

* ``periodic_quadrature`` -- the trapezoidal rule on an equispaced periodic
  grid, which is spectrally accurate for smooth periodic integrands.
* ``CumulativeIntegral`` -- prefix integrals ``int_{-pi}^theta f`` built from
  per-panel Gauss-Legendre contributions, accurate to machine precision for
  integrands that are smooth on the interval (periodic or not).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import NumericError

TWO_PI = 2.0 * np.pi

__all__ = [
    "TWO_PI",
    "wrap",
    "to_mu_coordinates",
    "QuadratureGrid",
    "periodic_quadrature",
    "trig_moment",
    "interval_integral",
    "CumulativeIntegral",
    "periodic_derivative",
]


def wrap(x):
    """Reduce an angle (or array of angles) to the interval (-pi, pi].

    The seam follows the convention wrap(-pi) = pi, so every equivalence
    class has exactly one representative.
    """
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("wrap: angle must be finite, got %r" % (x,))
    w = arr - TWO_PI * np.floor((arr + np.pi) / TWO_PI)
    w = np.where(w <= -np.pi, w + TWO_PI, w)
    if np.isscalar(x) or arr.ndim == 0:
        return float(w)
    return w


def to_mu_coordinates(theta, mu):
    """Express ``theta`` in the chart centred at ``mu`` (mu maps to 0)."""
    return wrap(np.asarray(theta, dtype=float) - mu) if np.ndim(theta) else wrap(theta - mu)


@dataclass(frozen=True)
class QuadratureGrid:
    """Equispaced periodic grid on (-pi, pi].

    Nodes are ``-pi + k * (2 pi / n)`` for k = 1..n, so the last node is
    exactly pi and -pi itself is excluded.
    """

    n_nodes: int = 4096

    def __post_init__(self):
        if self.n_nodes < 2:
            raise ValueError("QuadratureGrid needs at least 2 nodes")

    @property
    def nodes(self) -> np.ndarray:
        return np.linspace(-np.pi, np.pi, self.n_nodes + 1)[1:]

    @property
    def weight(self) -> float:
        return TWO_PI / self.n_nodes

    @property
    def spacing(self) -> float:
        return TWO_PI / self.n_nodes


def periodic_quadrature(f, grid: QuadratureGrid) -> float:
    """Integrate ``f`` over the whole circle with the periodic trapezoidal rule."""
    vals = np.asarray(f(grid.nodes), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = grid.nodes[~np.isfinite(vals)][0]
        raise NumericError(f"periodic_quadrature: non-finite integrand at theta={bad}")
    return float(vals.sum() * grid.weight)


def trig_moment(dist, k: int, grid: QuadratureGrid) -> complex:
    """k-th trigonometric moment E[exp(i k X)] of a distribution."""
    if k < 1:
        raise ValueError("trig_moment: k must be a positive integer")
    nodes = grid.nodes
    p = np.asarray(dist.density(nodes), dtype=float)
    re = float(np.sum(np.cos(k * nodes) * p) * grid.weight)
    im = float(np.sum(np.sin(k * nodes) * p) * grid.weight)
    return complex(re, im)


@lru_cache(maxsize=None)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def interval_integral(f, a: float, b: float, order: int = 24, max_panel: float = 0.5) -> float:
    """Integrate a smooth function over [a, b] with composite Gauss-Legendre."""
    if b < a:
        return -interval_integral(f, b, a, order=order, max_panel=max_panel)
    if b == a:
        return 0.0
    n_panels = max(1, int(np.ceil((b - a) / max_panel)))
    edges = np.linspace(a, b, n_panels + 1)
    gx, gw = _leggauss(order)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    pts = mids[:, None] + half * gx[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    if not np.all(np.isfinite(vals)):
        raise NumericError("interval_integral: non-finite integrand value")
    return float((vals @ gw).sum() * half)


class CumulativeIntegral:
    """Prefix integrals ``F(theta) = int_{-pi}^theta f(y) dy`` on a grid.

    Panel contributions between consecutive nodes are computed once with a
    fixed-order Gauss-Legendre rule and accumulated; ``at`` evaluates F at
    arbitrary angles by adding a partial-panel correction.  The same table
    backs the classical kernel, the circular kernel, alpha, the Stein
    equation solution and the CDF, so they share one discretisation.
    """

    def __init__(self, f, grid: QuadratureGrid, order: int = 8):
        self._f = f
        self._grid = grid
        edges = np.concatenate(([-np.pi], grid.nodes))
        gx, gw = _leggauss(order)
        half = 0.5 * grid.spacing
        mids = edges[:-1] + half
        pts = mids[:, None] + half * gx[None, :]
        vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
        if not np.all(np.isfinite(vals)):
            raise NumericError("CumulativeIntegral: non-finite integrand value")
        panel = (vals @ gw) * half
        self._edges = edges
        self._order = order
        # prefix[j] = integral from -pi to edges[j]; prefix has n+1 entries,
        # prefix[j+1] corresponds to node j of the grid.
        self._prefix = np.concatenate(([0.0], np.cumsum(panel)))

    @property
    def total(self) -> float:
        return float(self._prefix[-1])

    def node_values(self) -> np.ndarray:
        """F evaluated at the grid nodes."""
        return self._prefix[1:].copy()

    def at(self, theta):
        """Evaluate F at scalar or array ``theta`` in [-pi, pi]."""
        th = np.atleast_1d(np.asarray(theta, dtype=float))
        if np.any(th < -np.pi - 1e-12) or np.any(th > np.pi + 1e-12):
            raise ValueError("CumulativeIntegral.at: angle outside [-pi, pi]")
        th = np.clip(th, -np.pi, np.pi)
        dx = self._grid.spacing
        idx = np.clip(np.floor((th + np.pi) / dx).astype(int), 0, self._grid.n_nodes)
        a = self._edges[idx]
        base = self._prefix[idx]
        # partial panel from the preceding edge up to theta
        gx, gw = _leggauss(12)
        halfs = 0.5 * (th - a)
        mids = 0.5 * (th + a)
        pts = mids[:, None] + halfs[:, None] * gx[None, :]
        vals = np.asarray(self._f(pts.ravel()), dtype=float).reshape(pts.shape)
        out = base + (vals @ gw) * halfs
        if np.isscalar(theta) or np.ndim(theta) == 0:
            return float(out[0])
        return out


def periodic_derivative(values: np.ndarray, grid: QuadratureGrid) -> np.ndarray:
    """Spectral derivative of a smooth periodic function sampled on the grid."""
    n = grid.n_nodes
    if len(values) != n:
        raise ValueError("periodic_derivative: values must match the grid")
    k = np.fft.fftfreq(n, d=1.0 / n)
    if n % 2 == 0:
        k[n // 2] = 0.0
    return np.real(np.fft.ifft(1j * k * np.fft.fft(values)))
