"""Fast energy-distance (Riesz-kernel MMD) values, gradients, and particle flows.

The negative distance kernel admits an exact reduction of its d-dimensional
MMD to one-dimensional projections, where values and gradients cost only a
sort. This package provides the quadratic-cost oracles, the sorting fast
paths, projection-based stochastic estimators with their error bounds,
(momentum) particle flows for four kernel families, and a CLI that runs the
benchmark, error-scaling, flow, and bound-verification experiments.
"""

from .energy import (
    grad_F1,
    mmd_1d_sq,
    naive_grad,
    naive_mmd_sq,
    sorted_interaction_grad_1d,
    sorted_potential_grad_1d,
)
from .errors import DimensionMismatchError, FlowDivergenceError, UnsupportedKernelError
from .flow import (
    FlowConfig,
    FlowState,
    GradientMode,
    TrajectoryLog,
    euler_step,
    gaussian_init,
    gaussian_mixture_sampler,
    kernel_grad,
    momentum_step,
    objective_value,
    run_flow,
    three_circles_sampler,
)
from .kernels import KernelFamily, KernelSpec, extended_kernel, riesz_constant
from .metrics import (
    BoundReport,
    check_w1_bound,
    fit_loglog_slope,
    relative_grad_error,
    wasserstein1_1d,
)
from .particles import ParticleSet
from .rng import RngStream
from .sliced import (
    GradientEstimate,
    concentration_bound,
    mean_error_bound,
    sample_directions,
    sliced_grad,
    sliced_mmd_sq,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DimensionMismatchError",
    "FlowConfig",
    "FlowDivergenceError",
    "FlowState",
    "GradientEstimate",
    "GradientMode",
    "KernelFamily",
    "KernelSpec",
    "ParticleSet",
    "RngStream",
    "TrajectoryLog",
    "UnsupportedKernelError",
    "check_w1_bound",
    "concentration_bound",
    "euler_step",
    "extended_kernel",
    "fit_loglog_slope",
    "gaussian_init",
    "gaussian_mixture_sampler",
    "grad_F1",
    "kernel_grad",
    "mean_error_bound",
    "mmd_1d_sq",
    "momentum_step",
    "naive_grad",
    "naive_mmd_sq",
    "objective_value",
    "relative_grad_error",
    "riesz_constant",
    "run_flow",
    "sample_directions",
    "sliced_grad",
    "sliced_mmd_sq",
    "sorted_interaction_grad_1d",
    "sorted_potential_grad_1d",
    "three_circles_sampler",
    "wasserstein1_1d",
]
