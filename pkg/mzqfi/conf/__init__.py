"""
Process-wide numerical tolerances and defaults.
"""

from .conf import Conf

__all__ = ["Conf"]
