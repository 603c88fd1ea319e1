"""
Special functions used by the coherent-state formulas: log-gamma, integer-order
modified Bessel functions of the first kind and their ratios.
"""

from .specfun import SeriesTolerance, bessel_i, bessel_ratio, log_gamma

__all__ = ["SeriesTolerance", "log_gamma", "bessel_i", "bessel_ratio"]
