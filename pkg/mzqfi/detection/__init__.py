"""
Detection schemes at the interferometer output: intensity difference,
single-port intensity and balanced homodyne, with their closed-form phase
sensitivities and the coefficient functions behind them.
"""

from .coefficients import (
    DifCoefficients,
    SingCoefficients,
    dif_coefficients,
    output_coefficients,
    sing_coefficients,
)
from .homodyne import HomodyneSeries, homodyne_series, locked_lo_phase
from .sensitivity import (
    Scheme,
    SensitivityPoint,
    default_theta_bounds,
    homodyne_coefficients,
    optimal_theta,
    performance_ratio,
    sensitivity,
    sensitivity_dif,
    sensitivity_hom,
    sensitivity_sing,
)

__all__ = [
    "DifCoefficients",
    "SingCoefficients",
    "dif_coefficients",
    "sing_coefficients",
    "output_coefficients",
    "HomodyneSeries",
    "homodyne_series",
    "locked_lo_phase",
    "Scheme",
    "SensitivityPoint",
    "sensitivity",
    "sensitivity_dif",
    "sensitivity_sing",
    "sensitivity_hom",
    "homodyne_coefficients",
    "performance_ratio",
    "optimal_theta",
    "default_theta_bounds",
]
