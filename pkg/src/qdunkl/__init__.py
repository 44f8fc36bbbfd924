"""Two-sided fractional quaternionic Dunkl transforms in two dimensions."""
from .errors import QDunklError
from .quatcore import AXIS_I, AXIS_J, AXIS_K, Quaternion, UnitAxis
from .quadrature import Grid2D, QuadratureRule1D, SampledField, build_rule, inner_product, norm2
from .transform1d import AxisTransformSpec, Side, frac_dunkl_quadrature, frac_dunkl_spectral, frac_hankel
from .frqdt2d import SpectralCoeffs, TransformSpec, analyze, frqdt, inverse_frqdt, synthesize
from .uncertainty import heisenberg_check, weighted_moment

__version__ = "0.1.0"

__all__ = [
    "QDunklError", "AXIS_I", "AXIS_J", "AXIS_K", "Quaternion", "UnitAxis", "Grid2D",
    "QuadratureRule1D", "SampledField", "build_rule", "inner_product", "norm2", "AxisTransformSpec",
    "Side", "frac_dunkl_quadrature", "frac_dunkl_spectral", "frac_hankel", "SpectralCoeffs",
    "TransformSpec", "analyze", "frqdt", "inverse_frqdt", "synthesize", "heisenberg_check",
    "weighted_moment",
]
