"""Uniform spectral response analysis of finite non-Hermitian matrices."""

__version__ = "0.1.0"

from .degeneracy import DegeneracyReport, classify, strength_function, strength_table
from .errors import (
    BadIndexSet,
    BadOrder,
    DegenerateInput,
    DivergentStrength,
    NoConvergence,
    NotAnEigenvalue,
    OnResonance,
    SingularMatrix,
    SpectralError,
    ZeroElement,
    ZeroMode,
)
from .modal import ModalExpansion, charpoly_newton, flv_expand, modes_explicit
from .perturb import PolygonPrediction, predict_polygons
from .response import greens_direct, greens_uniform, loglog_slope, power_sweep

__all__ = [
    "BadIndexSet", "BadOrder", "DegenerateInput", "DegeneracyReport", "DivergentStrength",
    "ModalExpansion", "NoConvergence", "NotAnEigenvalue", "OnResonance", "PolygonPrediction",
    "SingularMatrix", "SpectralError", "ZeroElement", "ZeroMode", "charpoly_newton", "classify",
    "flv_expand", "greens_direct", "greens_uniform", "loglog_slope", "modes_explicit",
    "power_sweep", "predict_polygons", "strength_function", "strength_table",
]
