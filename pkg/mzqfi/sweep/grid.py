import logging
import math
from typing import List

import numpy as np

from mzqfi.conf import Conf
from mzqfi.sweep.config import LinearGrid

logger = logging.getLogger(__name__)


def transmission_values(grid: LinearGrid) -> List[float]:
    """|α|² values of a QFI sweep, endpoints included exactly."""
    values = np.linspace(grid.start, grid.stop, grid.count)
    values[0], values[-1] = grid.start, grid.stop
    return [float(x) for x in values]


def theta_values(grid: LinearGrid, homodyne: bool = False) -> List[float]:
    """
    θ values in radians for a grid given in units of π.

    Points within ``theta_offset`` of a singular slope are moved away from
    it by ``theta_offset``. The intensity schemes are singular at multiples
    of π, the homodyne schemes at odd multiples of π/2.
    """
    offset = Conf().tolerance("theta_offset")
    shift = 0.5 * math.pi if homodyne else 0.0
    values = []
    for x in np.linspace(grid.start, grid.stop, grid.count):
        # 12 decimals in units of π; adding 0.0 turns -0.0 into 0.0
        theta = (round(float(x), 12) + 0.0) * math.pi
        nearest = round((theta - shift) / math.pi) * math.pi + shift
        if abs(theta - nearest) < offset:
            moved = nearest + offset if theta >= nearest else nearest - offset
            logger.debug(f"Moved θ = {theta!r} off the singular point {nearest!r} to {moved!r}")
            theta = moved
        values.append(theta)
    return values
