"""Orthonormal polynomial bases and Gauss rules fitted to sampled data."""

from ._gpcq import (
    MAX_DEGREE,
    DensityModel,
    NumericalError,
    Transform,
    Variant,
    fit,
    fit_samples,
    load,
    moments,
    quadrature,
    recurrence,
    sample,
    save,
    synthetic_samples,
)

__all__ = [
    "MAX_DEGREE",
    "DensityModel",
    "NumericalError",
    "Transform",
    "Variant",
    "fit",
    "fit_samples",
    "load",
    "moments",
    "quadrature",
    "recurrence",
    "sample",
    "save",
    "synthetic_samples",
]
