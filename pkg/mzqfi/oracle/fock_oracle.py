"""
Brute-force QFIM and phase sensitivities from the truncated two-mode grid.

Everything here recomputes, from amplitudes alone, what `mzqfi.qfi` and
`mzqfi.detection` give in closed form. The two paths share no formulas.
"""

import cmath
import logging
import math
from typing import Callable, Optional, Tuple

import numpy as np

from mzqfi.conf import Conf
from mzqfi.detection import Scheme, locked_lo_phase
from mzqfi.exceptions import DerivativeVanishes, OracleError
from mzqfi.oracle.two_mode import (
    BeamSplitterPair,
    PhaseConfig,
    PhaseScenario,
    TwoModeState,
    apply_beam_splitter,
    apply_phases,
    build_input,
    moments,
)
from mzqfi.qfi import QfimResult
from mzqfi.states import StateSpec

logger = logging.getLogger(__name__)


def generator_covariance(state: TwoModeState) -> QfimResult:
    """
    QFIM elements 4 Cov(G_i, G_j) of the phase generators on the post-BS1 state.

    With G_s = (ĝ₂+ĝ₃)/2 and G_d = (ĝ₂-ĝ₃)/2 this gives H_ss = Δ²(ĝ₂+ĝ₃),
    H_dd = Δ²(ĝ₂-ĝ₃) and H_sd = Δ²ĝ₂ - Δ²ĝ₃. Only the photon-number
    distribution of the grid enters.

    Parameters
    ----------
    state : TwoModeState
        State over modes (2, 3)

    Returns
    -------
    QfimResult
        ``h_a`` is ``None`` when H_ss = 0 (e.g. vacuum input)

    Raises
    ------
    OracleError
        If ``state`` is not over modes (2, 3)
    """
    if state.modes != (2, 3):
        raise OracleError(f"Generator covariance needs the state between the beam splitters, got modes {state.modes}")
    probs = state.probabilities / state.norm_sq
    n = np.arange(state.cutoff + 1, dtype=float)
    total = np.add.outer(n, n)
    diff = np.subtract.outer(n, n)

    def _var(values: np.ndarray) -> float:
        mean = float(np.sum(probs * values))
        return max(0.0, float(np.sum(probs * (values - mean) ** 2)))

    p2, p3 = probs.sum(axis=1), probs.sum(axis=0)
    var2 = float(np.sum(p2 * (n - np.dot(p2, n)) ** 2))
    var3 = float(np.sum(p3 * (n - np.dot(p3, n)) ** 2))
    return QfimResult.from_elements(_var(total), _var(diff), var2 - var3)


def oracle_qfim(
    spec: StateSpec,
    t_mag: float,
    cutoff: Optional[int] = None,
    port0: Optional[StateSpec] = None,
) -> QfimResult:
    """
    Full oracle path for the QFIM: input grid, first beam splitter, covariance.

    Examples
    --------
    ```
    oracle_qfim(StateSpec.perelomov(a=1, v=1.0), 1 / math.sqrt(2)).h_a  # 0.5430806348...
    ```
    """
    state = apply_beam_splitter(build_input(spec, cutoff, port0), t_mag)
    result = generator_covariance(state)
    logger.debug(f"Oracle QFIM for {spec.label} at |α|={t_mag:g} on cutoff {state.cutoff}: {result}")
    return result


def propagate(state: TwoModeState, splitters: BeamSplitterPair, phases: PhaseConfig) -> TwoModeState:
    """Send an input state through BS1, the phase shifts and BS2."""
    middle = apply_beam_splitter(state, splitters.t1_mag)
    return apply_beam_splitter(apply_phases(middle, phases), splitters.t2_mag)


def _phase_config(scenario: PhaseScenario, theta: float) -> PhaseConfig:
    if scenario is PhaseScenario.SYMMETRIC:
        return PhaseConfig.symmetric(theta)
    if scenario is PhaseScenario.ASYMMETRIC:
        return PhaseConfig.asymmetric(theta)
    raise ValueError("Sensitivities are taken along a single phase; use the asymmetric or symmetric scenario")


def _observable(scheme: Scheme, theta_l: float) -> Callable[[TwoModeState], Tuple[float, float]]:
    """Map a final state to (⟨Ŝ⟩, ⟨Ŝ²⟩) for the scheme's observable."""
    if scheme is Scheme.INTENSITY_DIFFERENCE or scheme is Scheme.SINGLE_MODE:
        def _counts(state: TwoModeState) -> Tuple[float, float]:
            n = np.arange(state.cutoff + 1, dtype=float)
            if scheme is Scheme.INTENSITY_DIFFERENCE:
                values = np.subtract.outer(n, n)
            else:
                values = np.repeat(n[:, None], n.size, axis=1)
            probs = state.probabilities
            return float(np.sum(probs * values)), float(np.sum(probs * values ** 2))
        return _counts

    lo = cmath.exp(-1j * theta_l)

    def _quadrature(state: TwoModeState) -> Tuple[float, float]:
        mean_b = moments(state, ["b4"])
        mean_b_sq = moments(state, ["b4", "b4"])
        mean_g = moments(state, ["g4"]).real
        mean_x = (lo * mean_b).real
        mean_x_sq = 0.25 + 0.5 * (lo * lo * mean_b_sq).real + 0.5 * mean_g
        return mean_x, mean_x_sq
    return _quadrature


def numeric_sensitivity(
    spec: StateSpec,
    splitters: BeamSplitterPair,
    scheme: Scheme,
    theta: float,
    dtheta: Optional[float] = None,
    scenario: Optional[PhaseScenario] = None,
    theta_l: Optional[float] = None,
    cutoff: Optional[int] = None,
) -> float:
    """
    Finite-difference Δθ = ΔŜ / |∂⟨Ŝ⟩/∂θ| evaluated on the Fock grid.

    The slope is a central difference refined by one Richardson step,
    (4D(dθ/2) - D(dθ))/3, which leaves an O(dθ⁴) error.

    Parameters
    ----------
    spec : StateSpec
        State in port 1, vacuum in port 0
    splitters : BeamSplitterPair
        |α| and |α′|
    scheme : Scheme
        Observable: ĝ₄ - ĝ₅, ĝ₄ or the quadrature of mode 4
    theta : float
        Working point in radians
    dtheta : float, optional
        Step in [1e-6, 1e-3]; defaults to the ``finite_difference_step`` tolerance
    scenario : PhaseScenario, optional
        Phase placement; symmetric for ``HOMODYNE_C``, asymmetric otherwise
    theta_l : float, optional
        Local-oscillator phase for homodyne schemes; defaults to arg ξ
    cutoff : int, optional
        Grid cutoff; defaults to `oracle_cutoff`

    Returns
    -------
    float
        Δθ in radians

    Raises
    ------
    DerivativeVanishes
        If |∂⟨Ŝ⟩/∂θ| is at or below derivative_floor·(1 + |⟨Ŝ⟩|)
    """
    conf = Conf()
    scheme = Scheme(scheme)
    if dtheta is None:
        dtheta = conf.tolerance("finite_difference_step")
    if not 1e-6 <= dtheta <= 1e-3:
        raise ValueError(f"dtheta must be in [1e-6, 1e-3], got {dtheta!r}")
    if scenario is None:
        scenario = PhaseScenario.SYMMETRIC if scheme is Scheme.HOMODYNE_C else PhaseScenario.ASYMMETRIC
    scenario = PhaseScenario(scenario)
    if theta_l is None:
        theta_l = locked_lo_phase(spec)

    middle = apply_beam_splitter(build_input(spec, cutoff), splitters.t1_mag)
    observe = _observable(scheme, theta_l)

    def _evaluate(at: float) -> Tuple[float, float]:
        final = apply_beam_splitter(apply_phases(middle, _phase_config(scenario, at)), splitters.t2_mag)
        return observe(final)

    def _central(step: float) -> float:
        return (_evaluate(theta + step)[0] - _evaluate(theta - step)[0]) / (2.0 * step)

    slope = (4.0 * _central(dtheta / 2.0) - _central(dtheta)) / 3.0
    mean, mean_sq = _evaluate(theta)
    if abs(slope) <= conf.tolerance("derivative_floor") * (1.0 + abs(mean)):
        raise DerivativeVanishes(f"Oracle slope {slope:.3g} of {scheme.value} vanishes at θ = {theta!r}")
    spread = math.sqrt(max(0.0, mean_sq - mean * mean))
    logger.debug(f"Oracle {scheme.value} at θ={theta:.6g}: <S>={mean:.9g}, ΔS={spread:.9g}, slope={slope:.9g}")
    return spread / abs(slope)
