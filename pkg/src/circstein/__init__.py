"""Stein's method on the unit circle: operators, kernels and W1 bounds."""

from .circle_core import (
    CumulativeIntegral,
    QuadratureGrid,
    interval_integral,
    periodic_derivative,
    periodic_quadrature,
    to_mu_coordinates,
    trig_moment,
    wrap,
)
from .distributions import (
    DistributionSpec,
    Family,
    MeanAngle,
    bingham,
    cardioid,
    uniform,
    von_mises,
    wn_density_series,
    wn_density_triple_product,
    wn_score_series,
    wrapped_cauchy,
    wrapped_normal,
)
from .errors import ContractError, NumericError
from .special_functions import bessel_i0, bessel_i1, erfi
from .stein_core import (
    AlphaEvaluation,
    KernelEvaluation,
    SteinSolution,
    alpha,
    circular_kernel_closed,
    circular_kernel_numeric,
    classical_kernel,
    inverse_operator,
    kernel_table,
    stein_operator,
    stein_solution,
)
from .w1_oracle import W1Computation, circular_w1, empirical_w1
from .wasserstein_bounds import (
    BoundReport,
    DensityRatio,
    PosteriorSpec,
    bayes_envelope,
    bayes_posteriors,
    density_ratio,
    envelope_vm_bingham,
    envelope_vm_wn,
    envelope_wn_wc,
    lower_bound_via_sin,
    sandwich_bounds,
    wn_score_sum_bound,
)

__version__ = "0.1.0"
