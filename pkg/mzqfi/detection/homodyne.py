"""
Series for the first and second field moments of the coherent states, as used
by balanced homodyne detection.

With t = |ξ| and the field rotated by the phase of ξ, the series give

    ν = e^{-i arg ξ} ⟨b̂₁⟩,   μ = e^{-2i arg ξ} (⟨b̂₁²⟩ - ⟨b̂₁⟩²),   ḡ = ⟨ĝ₁⟩.

Perelomov (Γ-ratios over Γ(2a), prefactor cosh^{-4a}(v/2) = (1 - t²)^{2a}):

    ν_P = cosh^{-4a}(v/2) Σ_{g≥1} √(Γ(g+2a)Γ(g+2a-1)) / (Γ(2a)(g-1)!) t^{2g-1}
    μ_P = cosh^{-4a}(v/2)/t² [Σ_{g≥2} √(Γ(g+2a)Γ(g+2a-2)) / (Γ(2a)(g-2)!) t^{2g}
                              - cosh^{-4a}(v/2) (Σ_{g≥1} ... t^{2g})²]

Barut-Girardello (I = I_{2a-1}(2t)):

    ν_B = t^{2(a-1)}/I Σ_{g≥1} t^{2g} / ((g-1)! √(Γ(g+2a)Γ(g+2a-1)))
    μ_B = t^{2a-3}/I [Σ_{g≥2} t^{2g} / ((g-2)! √(Γ(g+2a)Γ(g+2a-2)))
                      - t^{2a-1}/I (Σ_{g≥1} ...)²]

The ν_B prefactor exponent is 2(a-1); with it ν_B equals |⟨b̂₁⟩| computed
from the Fock amplitudes.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import gammaln

from mzqfi.specfun import bessel_i, bessel_ratio
from mzqfi.states import StateKind, StateSpec, auto_cutoff, closed_form_stats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HomodyneSeries:
    """
    Rotated field moments of an input state.

    Attributes
    ----------
    mu : float
        e^{-2i arg ξ} Δ²b̂₁ (real for both families)
    nu : complex
        e^{-i arg ξ} ⟨b̂₁⟩ (real and nonnegative for both families)
    g_bar : float
        ⟨ĝ₁⟩
    """
    mu: float
    nu: complex
    g_bar: float


def locked_lo_phase(spec: StateSpec) -> float:
    """Local-oscillator phase θ_L = arg ξ that keeps μ and ν real."""
    return cmath.phase(spec.xi) if not spec.is_vacuum else 0.0


def _log_sum(log_terms: np.ndarray) -> float:
    """Sum of exp(log_terms); 0 for an empty sum."""
    if log_terms.size == 0:
        return 0.0
    return float(np.exp(log_terms).sum())


def homodyne_series(spec: StateSpec, cutoff: Optional[int] = None) -> HomodyneSeries:
    """
    Evaluate μ, ν and ḡ by their truncated series.

    Parameters
    ----------
    spec : StateSpec
        Input state
    cutoff : int, optional
        Highest photon number summed; defaults to the certified cutoff of
        ``spec``. Empty sums contribute zero.

    Returns
    -------
    HomodyneSeries
        All zero for the vacuum

    Examples
    --------
    ```
    series = homodyne_series(StateSpec.perelomov(a=1, v=1.0))
    series.g_bar  # a(cosh 1 - 1) = 0.5430806348...
    ```
    """
    if spec.is_vacuum:
        return HomodyneSeries(0.0, 0j, 0.0)
    if cutoff is None:
        cutoff = auto_cutoff(spec)
    a2 = float(spec.two_a)
    t = abs(spec.xi)
    log_t = math.log(t)
    g1 = np.arange(1, cutoff + 1, dtype=float)
    g2 = np.arange(2, cutoff + 1, dtype=float)

    if spec.kind is StateKind.PERELOMOV:
        log_prefactor = -2.0 * a2 * math.log(math.cosh(spec.squeeze_v / 2.0))
        sum_nu = _log_sum(
            0.5 * (gammaln(g1 + a2) + gammaln(g1 + a2 - 1.0)) - gammaln(a2) - gammaln(g1) + 2.0 * g1 * log_t
        )
        sum_mu = _log_sum(
            0.5 * (gammaln(g2 + a2) + gammaln(g2 + a2 - 2.0)) - gammaln(a2) - gammaln(g2 - 1.0) + 2.0 * g2 * log_t
        )
        prefactor = math.exp(log_prefactor)
        nu = prefactor * sum_nu / t
        mu = prefactor / (t * t) * (sum_mu - prefactor * sum_nu * sum_nu)
        g_bar = closed_form_stats(spec).mean
    else:
        norm = bessel_i(spec.two_a - 1, 2.0 * t)
        sum_nu = _log_sum(
            2.0 * g1 * log_t - gammaln(g1) - 0.5 * (gammaln(g1 + a2) + gammaln(g1 + a2 - 1.0))
        )
        sum_mu = _log_sum(
            2.0 * g2 * log_t - gammaln(g2 - 1.0) - 0.5 * (gammaln(g2 + a2) + gammaln(g2 + a2 - 2.0))
        )
        nu = t ** (a2 - 2.0) / norm * sum_nu
        mu = t ** (a2 - 3.0) / norm * (sum_mu - t ** (a2 - 1.0) / norm * sum_nu * sum_nu)
        g_bar = t * bessel_ratio(spec.two_a - 1, 2.0 * t)

    logger.debug(f"{spec.label}: homodyne series to g={cutoff}: mu={mu:.6g}, nu={nu:.6g}")
    return HomodyneSeries(float(mu), complex(nu), float(g_bar))
