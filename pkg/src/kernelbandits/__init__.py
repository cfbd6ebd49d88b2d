"""Isotropic-kernel bandit optimization toolkit."""

from kernelbandits.kernels import (
    KernelSpec,
    SmoothnessParams,
    SpectralDecayClass,
    decay_class,
    eval_pair,
    gram,
    holder_params,
    pp_polynomial,
)

__all__ = [
    "KernelSpec",
    "SpectralDecayClass",
    "SmoothnessParams",
    "decay_class",
    "eval_pair",
    "gram",
    "holder_params",
    "pp_polynomial",
]

__version__ = "0.1.0"
