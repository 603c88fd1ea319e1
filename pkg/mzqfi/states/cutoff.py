"""
Photon-number distributions of the coherent states and certified Fock cutoffs.

Both families have ratios r(g) = P(g+1)/P(g) that never increase with g:
t²(g+2a)/(g+1) for Perelomov states and t²/((g+1)(g+2a)) for Barut-Girardello
states, with t = |ξ|. Past any G with r(G+1) < 1 the tail is bounded by a
geometric series, P(G+1)/(1 - r(G+1)).
"""

import logging
import math
from typing import Optional

import numpy as np
from scipy.special import gammaln

from mzqfi.conf import Conf
from mzqfi.exceptions import CutoffError
from mzqfi.specfun import bessel_i
from mzqfi.states.state_spec import StateKind, StateSpec

logger = logging.getLogger(__name__)


def log_probability(spec: StateSpec, g) -> np.ndarray:
    """
    ln P(g) for the photon-number distribution of ``spec``.

    Parameters
    ----------
    spec : StateSpec
        Input state
    g : int or array_like
        Photon numbers (nonnegative)

    Returns
    -------
    numpy.ndarray
        ln P(g); ``-inf`` where the probability is exactly zero
    """
    g = np.asarray(g, dtype=float)
    if spec.is_vacuum:
        return np.where(g == 0, 0.0, -np.inf)

    a2 = float(spec.two_a)
    if spec.kind is StateKind.PERELOMOV:
        half_v = spec.squeeze_v / 2.0
        log_t = math.log(math.tanh(half_v))
        # (1 - tanh²)^(2a) = cosh^(-4a)
        log_norm = -2.0 * a2 * math.log(math.cosh(half_v)) - gammaln(a2)
        return log_norm + gammaln(g + a2) - gammaln(g + 1.0) + 2.0 * g * log_t

    t = spec.xi_mag
    log_t = math.log(t)
    log_norm = (a2 - 1.0) * log_t - math.log(bessel_i(spec.two_a - 1, 2.0 * t))
    return log_norm + 2.0 * g * log_t - gammaln(g + 1.0) - gammaln(g + a2)


def _step_ratio(spec: StateSpec, g: int) -> float:
    """P(g+1)/P(g)."""
    t2 = abs(spec.xi) ** 2
    if spec.kind is StateKind.PERELOMOV:
        return t2 * (g + spec.two_a) / (g + 1.0)
    return t2 / ((g + 1.0) * (g + spec.two_a))


def tail_bound(spec: StateSpec, cutoff: int) -> float:
    """
    Upper bound on the probability above ``cutoff``.

    Returns
    -------
    float
        sum_{g > cutoff} P(g) <= P(cutoff+1) / (1 - r(cutoff+1)), or ``inf``
        when the ratio has not yet dropped below one
    """
    if spec.is_vacuum:
        return 0.0
    r = _step_ratio(spec, cutoff + 1)
    if r >= 1.0:
        return math.inf
    return math.exp(float(log_probability(spec, cutoff + 1))) / (1.0 - r)


def auto_cutoff(
    spec: StateSpec,
    tail_tolerance: Optional[float] = None,
    max_cutoff: Optional[int] = None,
) -> int:
    """
    Smallest cutoff whose tail bound is below ``tail_tolerance``.

    The search doubles from the configured initial cutoff until the bound
    holds, then bisects back down.

    Parameters
    ----------
    spec : StateSpec
        Input state
    tail_tolerance : float, optional
        Defaults to ``Conf().tolerance("tail_tolerance")``
    max_cutoff : int, optional
        Defaults to ``Conf().tolerance("max_cutoff")``

    Returns
    -------
    int
        Cutoff >= 1

    Raises
    ------
    CutoffError
        If no cutoff up to ``max_cutoff`` meets the tolerance
    """
    conf = Conf()
    tol = conf.tolerance("tail_tolerance") if tail_tolerance is None else tail_tolerance
    cap = int(conf.tolerance("max_cutoff") if max_cutoff is None else max_cutoff)
    if spec.is_vacuum:
        return 1

    failed = 0
    hi = min(int(conf.tolerance("initial_cutoff")), cap)
    while tail_bound(spec, hi) >= tol:
        if hi >= cap:
            raise CutoffError(f"{spec.label}: tail above {tol:g} even at cutoff {cap}")
        failed, hi = hi, min(2 * hi, cap)

    lo = failed
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tail_bound(spec, mid) < tol:
            hi = mid
        else:
            lo = mid
    cutoff = max(hi, 1)
    logger.debug(f"{spec.label}: auto cutoff {cutoff} for tail tolerance {tol:g}")
    return cutoff
