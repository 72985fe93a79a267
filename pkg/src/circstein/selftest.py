"""Acceptance battery: one named check per shipped numerical guarantee.

Each check raises AssertionError with a diagnostic message on failure.
``run_selftest`` executes all of them, prints one pass/fail line per check
and returns the failures.  The pytest acceptance suite reuses the same
checks one by one.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .circle_core import QuadratureGrid, interval_integral, periodic_quadrature
from .distributions import (
    DistributionSpec,
    bingham,
    cardioid,
    uniform,
    von_mises,
    wn_density_series,
    wn_density_triple_product,
    wrapped_cauchy,
    wrapped_normal,
)
from .stein_core import (
    _linear_cumulative,
    _sin_cumulative,
    circular_kernel_closed,
    circular_kernel_numeric,
    inverse_operator,
)
from .w1_oracle import circular_w1, empirical_w1
from .wasserstein_bounds import (
    bayes_envelope,
    bayes_posteriors,
    envelope_vm_bingham,
    envelope_vm_wn,
    envelope_wn_wc,
    sandwich_bounds,
    wn_score_sum_bound,
)

__all__ = ["run_selftest", "ALL_CHECKS"]

_GRID = QuadratureGrid(4096)
_THETA_721 = np.linspace(-np.pi, np.pi, 722)[1:]


def _six_families() -> list[DistributionSpec]:
    return [
        uniform(),
        von_mises(0.0, 2.0),
        bingham(0.0, 1.0),
        cardioid(0.0, 0.3),
        wrapped_normal(0.0, 1.0),
        wrapped_cauchy(0.0, 1.0),
    ]


_TEST_FUNCTIONS = [
    (lambda x: np.ones_like(x), lambda x: np.zeros_like(x)),
    (np.cos, lambda x: -np.sin(x)),
    (np.sin, np.cos),
    (lambda x: np.cos(2 * x), lambda x: -2 * np.sin(2 * x)),
]


def check_kernel_closed_forms():
    """C1: closed-form kernels match quadrature within 1e-8 on 721 nodes."""
    start = time.perf_counter()
    dists = (
        [von_mises(0.0, k) for k in (0.5, 1.0, 2.0, 5.0)]
        + [uniform()]
        + [bingham(0.0, z) for z in (0.5, 2.0)]
        + [wrapped_cauchy(0.0, gm) for gm in (0.5, 1.0, 2.0)]
    )
    worst = 0.0
    for d in dists:
        closed = np.asarray(circular_kernel_closed(d, _THETA_721))
        numeric = np.asarray(circular_kernel_numeric(d, _THETA_721, _GRID))
        worst = max(worst, float(np.max(np.abs(closed - numeric))))
    elapsed = time.perf_counter() - start
    assert worst < 1e-8, f"max closed-vs-numeric deviation {worst:.3e}"
    assert elapsed < 10.0, f"runtime {elapsed:.1f}s exceeds 10s"


def check_operator_mean_zero():
    """C2: |E_P[T_p f]| < 1e-10 for f in {1, cos, sin, cos 2x}, all families."""
    for d in _six_families():
        for f, fp in _TEST_FUNCTIONS:
            val = periodic_quadrature(
                lambda x: (fp(x) + d.score(x) * f(x)) * d.density(x), _GRID
            )
            assert abs(val) < 1e-10, f"{d.family.value}: E[T_p f] = {val:.3e}"


def _fd(fun, theta, step=1e-5):
    return (fun(theta + step) - fun(theta - step)) / (2.0 * step)


def check_inverse_property():
    """C3: inverse-operator round trips and the C-shift invariance."""
    thetas = [-2.2, -0.7, 0.0, 0.9, 2.5]
    for dist in (von_mises(0.0, 1.0), uniform()):
        e_cos = periodic_quadrature(lambda x: np.cos(x) * dist.density(x), _GRID)
        for h in (np.sin, lambda x: np.cos(x) - e_cos):
            g = lambda th: inverse_operator(dist, h, th, _GRID)
            for th in thetas:
                # forward: T_p (T_p^{-1} h) = h
                resid = _fd(g, th) + dist.score(th) * g(th) - h(th)
                assert abs(resid) < 1e-8, f"T(Tinv h) residual {resid:.3e} at {th}"
            # backward: T_p^{-1} (T_p f) = f for f in the range of T_p^{-1}
            # (the boundary constant fixes the C/p freedom there)
            tp_g = np.vectorize(lambda x: _fd(g, x) + dist.score(x) * g(x))
            for th in (-0.7, 0.9):
                resid = inverse_operator(dist, tp_g, th, _GRID) - g(th)
                assert abs(resid) < 1e-8, f"Tinv(T g) residual {resid:.3e} at {th}"
        # C-shift freedom: adding C/p leaves T_p of the output unchanged
        h = np.sin
        g = lambda th: inverse_operator(dist, h, th, _GRID)
        for c in (-1.0, 1.0):
            g_c = lambda th: g(th) + c / dist.density(th)
            for th in thetas:
                resid = (_fd(g_c, th) + dist.score(th) * g_c(th)) - (
                    _fd(g, th) + dist.score(th) * g(th)
                )
                assert abs(resid) < 1e-8, f"C-shift residual {resid:.3e} at {th}"


def check_integration_by_parts():
    """C4: |E[sin X phi] - E[tau_c phi']| < 1e-8 for three phi, all families."""
    nodes = _GRID.nodes
    phis = [
        (np.cos, lambda x: -np.sin(x)),
        (np.sin, np.cos),
        (lambda x: np.exp(np.cos(x)), lambda x: -np.sin(x) * np.exp(np.cos(x))),
    ]
    for d in _six_families():
        tau = np.asarray(circular_kernel_numeric(d, nodes, _GRID))
        p = np.asarray(d.centered().density(nodes))
        for phi, dphi in phis:
            lhs = float(np.sum(np.sin(nodes) * phi(nodes) * p) * _GRID.weight)
            rhs = float(np.sum(tau * dphi(nodes) * p) * _GRID.weight)
            assert abs(lhs - rhs) < 1e-8, f"{d.family.value}: {lhs - rhs:.3e}"


def check_vm_kernel_bounds():
    """C5: 0 <= tau_c <= (1 - e^{-2k})/k <= 1/k, with the endpoint values."""
    for k in (0.5, 1.0, 2.0, 5.0):
        d = von_mises(0.0, k)
        tc = np.asarray(circular_kernel_closed(d, _THETA_721))
        hi = (1.0 - math.exp(-2.0 * k)) / k
        assert np.all(tc >= -1e-12) and np.all(tc <= hi + 1e-12)
        assert hi <= 1.0 / k + 1e-15
        assert abs(circular_kernel_closed(d, math.pi)) < 1e-10
        assert abs(circular_kernel_closed(d, -math.pi)) < 1e-10
        assert abs(circular_kernel_closed(d, 0.0) - hi) < 1e-10


def check_kappa_zero_limit():
    """C6: VM kernel at kappa = 1e-6 matches the uniform kernel 1 + cos."""
    tc = np.asarray(circular_kernel_closed(von_mises(0.0, 1e-6), _THETA_721))
    err = float(np.max(np.abs(tc - (1.0 + np.cos(_THETA_721)))))
    assert err < 1e-5, f"kappa->0 deviation {err:.3e}"


def check_alpha_envelope():
    """C7: |alpha sin| <= 2 pi on the open grid; uniform saturates at the seam."""
    nodes = _GRID.nodes
    for d in (uniform(), von_mises(0.0, 2.0), wrapped_normal(0.0, 1.0), wrapped_cauchy(0.0, 1.0)):
        m = -_linear_cumulative(d, _GRID.n_nodes).node_values()
        s = -_sin_cumulative(d, _GRID.n_nodes).node_values()
        alpha_sin = m[:-1] / s[:-1] * np.sin(nodes[:-1])
        peak = float(np.max(np.abs(alpha_sin)))
        assert peak <= 2.0 * math.pi + 1e-6, f"{d.family.value}: |alpha sin| = {peak}"
        if d.family.value == "uniform":
            near_seam = abs(alpha_sin[-1])
            assert abs(near_seam - 2.0 * math.pi) < 1e-2, f"seam value {near_seam}"


def _bayes_setup(n: int, seed: int = 7, kappa: float = 2.0, kappa_star: float = 1.0):
    data = von_mises(0.5, 2.0).sample(n, seed, _GRID)
    return data, bayes_posteriors(data, kappa, kappa_star)


def check_sandwich_validation():
    """C8: lower - 1e-6 <= exact W1 <= upper + 1e-6 on all reference pairs."""
    data, post = _bayes_setup(100)
    pairs = [
        (von_mises(0.0, 2.0), bingham(0.0, 1.0)),
        (von_mises(0.0, 2.0), wrapped_normal(0.0, 0.5)),
        (wrapped_cauchy(0.0, 1.0), wrapped_normal(0.0, 1.0)),
        (post.model1(), post.model2()),
        (post.model2(), post.model1()),
    ]
    for base, target in pairs:
        start = time.perf_counter()
        # BoundReport construction already enforces the sandwich invariant
        report = sandwich_bounds(base, target, _GRID)
        elapsed = time.perf_counter() - start
        assert report.lower - 1e-6 <= report.oracle_w1 <= report.upper + 1e-6
        assert elapsed < 5.0, f"pair took {elapsed:.1f}s"


def check_envelope_reproduction():
    """C9: closed-form envelopes reproduce the worked values and dominate."""
    assert abs(envelope_vm_bingham(2.0, 1.0) - 4.0 * math.pi) < 1e-12
    assert abs(envelope_vm_wn(1.0, 1.0) - (2.0 * math.pi**3 + 2.0 * math.pi)) < 1e-12
    # kappa -> infinity limit: the kernel term vanishes and 2 pi remains
    assert abs(envelope_vm_wn(1e6, 1.0) - 2.0 * math.pi) < 1e-3
    gamma_star = math.acosh((math.e + 1.0) / (math.e - 1.0))
    below = envelope_wn_wc(1.0, gamma_star)
    above = envelope_wn_wc(1.0, gamma_star + 1e-13)
    assert abs(below - above) < 1e-10, f"branch jump {below - above:.3e}"
    data, post = _bayes_setup(100)
    cases = [
        (sandwich_bounds(von_mises(0.0, 2.0), bingham(0.0, 1.0), _GRID).upper,
         envelope_vm_bingham(2.0, 1.0)),
        (sandwich_bounds(von_mises(0.0, 2.0), wrapped_normal(0.0, 0.5), _GRID).upper,
         envelope_vm_wn(2.0, 0.5)),
        (sandwich_bounds(wrapped_cauchy(0.0, 1.0), wrapped_normal(0.0, 1.0), _GRID).upper,
         envelope_wn_wc(1.0, 1.0)),
        (sandwich_bounds(post.model1(), post.model2(), _GRID).upper,
         bayes_envelope(data, 2.0, 1.0)),
    ]
    for upper, env in cases:
        assert upper <= env + 1e-6, f"upper {upper} exceeds envelope {env}"


def check_wn_series_bound():
    """C10: summed score series at the seam stays below pi^2 / sigma^4."""
    for sigma2 in (0.5, 1.0, 2.0):
        total, bound = wn_score_sum_bound(sigma2)
        assert total <= bound, f"sigma2={sigma2}: {total} > {bound}"


def check_wn_density_duality():
    """C11: lattice-sum and product forms agree; score matches log-density FD."""
    thetas = np.linspace(-np.pi, np.pi, 181)[1:]
    for sigma2 in (0.25, 1.0, 4.0):
        a = wn_density_series(thetas, sigma2)
        b = wn_density_triple_product(thetas, sigma2)
        err = float(np.max(np.abs(a - b)))
        assert err < 1e-12, f"sigma2={sigma2}: duality gap {err:.3e}"
    d = wrapped_normal(0.0, 1.0)
    step = 1e-6
    interior = thetas[:-1]
    fd = (
        np.log(wn_density_triple_product(interior + step, 1.0))
        - np.log(wn_density_triple_product(interior - step, 1.0))
    ) / (2.0 * step)
    err = float(np.max(np.abs(fd - d.score(interior))))
    assert err < 1e-8, f"score-vs-FD gap {err:.3e}"


def check_bayes_rate():
    """C12: envelope(n) * n stable within 20% and the oracle stays below it."""
    scaled = []
    for n in (100, 400, 1600):
        data, post = _bayes_setup(n)
        env = bayes_envelope(data, 2.0, 1.0)
        w1 = circular_w1(post.model1(), post.model2(), _GRID).value
        assert w1 <= env, f"n={n}: oracle {w1} exceeds envelope {env}"
        scaled.append(env * n)
    spread = max(scaled) / min(scaled) - 1.0
    assert spread < 0.2, f"envelope * n spread {spread:.2%}"


def check_oracle_consistency():
    """C13: symmetry, triangle, zero, refinement stability, MC agreement."""
    a, b = von_mises(0.0, 1.0), wrapped_normal(0.0, 1.0)
    u = uniform()
    d_ua = circular_w1(u, a, _GRID).value
    assert abs(d_ua - circular_w1(a, u, _GRID).value) < 1e-10
    d_ab = circular_w1(a, b, _GRID).value
    d_ub = circular_w1(u, b, _GRID).value
    assert d_ub <= d_ua + d_ab + 1e-8
    assert circular_w1(a, a, _GRID).value < 1e-9
    fine = QuadratureGrid(2 * _GRID.n_nodes)
    assert abs(d_ua - circular_w1(u, a, fine).value) < 1e-6
    for p, q in [
        (von_mises(0.0, 5.0), von_mises(0.4, 5.0)),
        (wrapped_cauchy(0.0, 1.0), wrapped_normal(0.0, 1.0)),
    ]:
        est, se = empirical_w1(p, q, 5000, seed=1)
        exact = circular_w1(p, q, _GRID).value
        assert abs(est - exact) <= 2.0 * se, (
            f"{p.family.value}/{q.family.value}: |{est} - {exact}| > 2 * {se}"
        )


ALL_CHECKS = [
    ("kernel closed forms vs quadrature", check_kernel_closed_forms),
    ("Stein operator mean zero", check_operator_mean_zero),
    ("inverse operator round trips", check_inverse_property),
    ("kernel integration by parts", check_integration_by_parts),
    ("von Mises kernel bound chain", check_vm_kernel_bounds),
    ("kappa -> 0 kernel limit", check_kappa_zero_limit),
    ("alpha envelope 2 pi", check_alpha_envelope),
    ("Wasserstein sandwich validation", check_sandwich_validation),
    ("closed-form envelope reproduction", check_envelope_reproduction),
    ("wrapped-normal series bound", check_wn_series_bound),
    ("wrapped-normal density duality", check_wn_density_duality),
    ("Bayesian O(1/n) rate", check_bayes_rate),
    ("W1 oracle self-consistency", check_oracle_consistency),
]


def run_selftest(out=print) -> list[tuple[str, str]]:
    """Run every acceptance check; returns the (name, message) failures.

    Also enforces the runtime budget (under 5 minutes) and determinism of a
    representative recomputation.
    """
    failures: list[tuple[str, str]] = []
    start = time.perf_counter()
    for name, fn in ALL_CHECKS:
        try:
            fn()
        except AssertionError as exc:
            failures.append((name, str(exc)))
            out(f"FAIL {name}: {exc}")
        else:
            out(f"PASS {name}")
    elapsed = time.perf_counter() - start
    first = sandwich_bounds(von_mises(0.0, 2.0), bingham(0.0, 1.0), _GRID)
    second = sandwich_bounds(von_mises(0.0, 2.0), bingham(0.0, 1.0), _GRID)
    try:
        assert elapsed < 300.0, f"selftest took {elapsed:.0f}s"
        assert first.to_dict() == second.to_dict(), "non-deterministic recomputation"
    except AssertionError as exc:
        failures.append(("runtime and determinism", str(exc)))
        out(f"FAIL runtime and determinism: {exc}")
    else:
        out(f"PASS runtime and determinism ({elapsed:.1f}s)")
    return failures
