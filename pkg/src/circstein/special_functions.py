"""Self-contained special functions: I0, I1 and the imaginary error function.

Everything here is series-based and dependency-free.  The guarded argument
ranges (x <= 700 for the Bessel functions, |x| <= 26 for erfi) keep every
intermediate below double-precision overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "SpecialFunctionResult",
    "bessel_i0",
    "bessel_i1",
    "erfi",
    "bessel_i0_info",
    "bessel_i1_info",
    "erfi_info",
]

_SQRT_PI = math.sqrt(math.pi)
_REL_TOL = 1e-16
_TERM_CAP = 2000


@dataclass(frozen=True)
class SpecialFunctionResult:
    value: float
    terms_used: int
    converged: bool


def _i0_series(x: float) -> SpecialFunctionResult:
    # I0(x) = sum_{k>=0} (x^2/4)^k / (k!)^2
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, _TERM_CAP + 1):
        term *= q / (k * k)
        total += term
        if term < _REL_TOL * total:
            return SpecialFunctionResult(total, k, True)
    return SpecialFunctionResult(total, _TERM_CAP, False)


def _i1_series(x: float) -> SpecialFunctionResult:
    # I1(x) = sum_{k>=0} (x/2)^(2k+1) / (k! (k+1)!)
    half = 0.5 * x
    q = half * half
    term = half
    total = half
    for k in range(1, _TERM_CAP + 1):
        term *= q / (k * (k + 1))
        total += term
        if term < _REL_TOL * (abs(total) + 1e-300):
            return SpecialFunctionResult(total, k, True)
    return SpecialFunctionResult(total, _TERM_CAP, False)


def _erfi_series(x: float) -> SpecialFunctionResult:
    # erfi(x) = (2/sqrt(pi)) sum_{k>=0} x^(2k+1) / (k! (2k+1)); all terms
    # positive, so there is no cancellation even for large x.
    x2 = x * x
    term = x
    total = x / 1.0
    for k in range(1, _TERM_CAP + 1):
        term *= x2 / k
        total += term / (2 * k + 1)
        if term / (2 * k + 1) < _REL_TOL * (abs(total) + 1e-300):
            return SpecialFunctionResult(2.0 / _SQRT_PI * total, k, True)
    return SpecialFunctionResult(2.0 / _SQRT_PI * total, _TERM_CAP, False)


def _dawson_rybicki(x: float, h: float = 0.2) -> SpecialFunctionResult:
    # Rybicki's sampling series for the Dawson function,
    #   D(x) ~ (1/sqrt(pi)) sum_{n odd} exp(-(x - n h)^2) / n,
    # with truncation error O(exp(-pi^2 / (4 h^2))); h = 0.2 is far below
    # double precision.  Only |x - n h| <= 28 contributes.
    n_lo = int(math.floor((x - 28.0) / h))
    n_hi = int(math.ceil((x + 28.0) / h))
    total = 0.0
    terms = 0
    for n in range(n_lo, n_hi + 1):
        if n % 2 == 0:
            continue
        total += math.exp(-((x - n * h) ** 2)) / n
        terms += 1
    return SpecialFunctionResult(total / _SQRT_PI, terms, True)


def _log_i0(x: float) -> float:
    """log I0(x) without the overflow guard; series for small arguments,
    asymptotic expansion beyond (needed by highly concentrated densities)."""
    x = float(x)
    if x < 0:
        raise ValueError("log I0 needs x >= 0")
    if x <= 50.0:
        return math.log(_i0_series(x).value)
    # I0(x) ~ e^x / sqrt(2 pi x) * sum_k prod_{j<=k} (2j-1)^2 / (8 x j)
    term = 1.0
    total = 1.0
    for j in range(1, 40):
        term *= (2 * j - 1) ** 2 / (8.0 * x * j)
        total += term
        if term < 1e-17 * total:
            break
    return x - 0.5 * math.log(2.0 * math.pi * x) + math.log(total)


def bessel_i0_info(x: float) -> SpecialFunctionResult:
    if not (0.0 <= x <= 700.0):
        raise ValueError(f"bessel_i0: argument must lie in [0, 700], got {x}")
    return _i0_series(float(x))


def bessel_i1_info(x: float) -> SpecialFunctionResult:
    if not (0.0 <= x <= 700.0):
        raise ValueError(f"bessel_i1: argument must lie in [0, 700], got {x}")
    return _i1_series(float(x))


def erfi_info(x: float) -> SpecialFunctionResult:
    x = float(x)
    if not abs(x) <= 26.0:
        raise ValueError(f"erfi: argument must lie in [-26, 26], got {x}")
    if x < 0.0:
        res = erfi_info(-x)
        return SpecialFunctionResult(-res.value, res.terms_used, res.converged)
    if x <= 3.0:
        return _erfi_series(x)
    # erfi(x) = (2/sqrt(pi)) exp(x^2) D(x) via the Dawson function
    d = _dawson_rybicki(x)
    return SpecialFunctionResult(
        2.0 / _SQRT_PI * math.exp(x * x) * d.value, d.terms_used, d.converged
    )


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order zero."""
    return bessel_i0_info(x).value


def bessel_i1(x: float) -> float:
    """Modified Bessel function of the first kind, order one."""
    return bessel_i1_info(x).value


def erfi(x: float) -> float:
    """Imaginary error function, erfi(x) = (2/sqrt(pi)) int_0^x exp(t^2) dt."""
    return erfi_info(x).value
