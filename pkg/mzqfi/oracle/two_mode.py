"""
Two-mode truncated Fock grids and the exact unitaries of the interferometer.

A `TwoModeState` stores amplitudes ``amps[n, m]`` for the pair of modes named
by ``modes``: (0, 1) at the input, (2, 3) between the beam splitters and
(4, 5) at the output. Beam splitters conserve the total photon number, so
each block n + m = N is mapped onto itself by a (N+1)×(N+1) unitary. The
input support never exceeds N = cutoff, so every occupied block fits the grid
and the action is exact.
"""

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import expm

from mzqfi.conf import Conf
from mzqfi.exceptions import MomentDegreeError, OracleError
from mzqfi.states import StateSpec, auto_cutoff, state_amplitudes

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^([bg])(\d)(\+?)$")


@dataclass(frozen=True)
class BeamSplitterPair:
    """
    Transmission magnitudes of the two beam splitters.

    The reflection coefficients follow β = i√(1-|α|²), so that α*β = i|αβ|.

    Attributes
    ----------
    t1_mag : float
        |α| of the first beam splitter
    t2_mag : float
        |α′| of the second beam splitter
    """
    t1_mag: float
    t2_mag: float

    def __post_init__(self):
        for name in ("t1_mag", "t2_mag"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value!r}")

    @classmethod
    def balanced(cls) -> "BeamSplitterPair":
        return cls(1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0))

    @staticmethod
    def reflection(t_mag: float) -> complex:
        return 1j * math.sqrt(max(0.0, 1.0 - t_mag * t_mag))

    @property
    def beta(self) -> complex:
        return self.reflection(self.t1_mag)

    @property
    def beta_prime(self) -> complex:
        return self.reflection(self.t2_mag)


class PhaseScenario(str, Enum):
    """How the phase shifts are placed in the arms."""
    TWO_PARAM = "two_param"
    ASYMMETRIC = "asymmetric"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class PhaseConfig:
    """
    Phase shifts θ₁ (mode 3, upper arm) and θ₂ (mode 2).

    Use the constructors: ``asymmetric(θ)`` puts θ on mode 3 only,
    ``symmetric(θ)`` splits it as θ₁ = -θ₂ = θ/2.
    """
    scenario: PhaseScenario
    theta1: float
    theta2: float

    def __post_init__(self):
        object.__setattr__(self, "scenario", PhaseScenario(self.scenario))
        if self.scenario is PhaseScenario.ASYMMETRIC and self.theta2 != 0.0:
            raise ValueError("asymmetric phases need theta2 == 0")
        if self.scenario is PhaseScenario.SYMMETRIC and self.theta1 != -self.theta2:
            raise ValueError("symmetric phases need theta1 == -theta2")

    @classmethod
    def two_param(cls, theta1: float, theta2: float) -> "PhaseConfig":
        return cls(PhaseScenario.TWO_PARAM, theta1, theta2)

    @classmethod
    def asymmetric(cls, theta: float) -> "PhaseConfig":
        return cls(PhaseScenario.ASYMMETRIC, theta, 0.0)

    @classmethod
    def symmetric(cls, theta: float) -> "PhaseConfig":
        return cls(PhaseScenario.SYMMETRIC, theta / 2.0, -theta / 2.0)

    @property
    def difference(self) -> float:
        return self.theta1 - self.theta2


@dataclass(frozen=True, eq=False)
class TwoModeState:
    """
    Amplitude grid over photon numbers (n, m), each 0..cutoff.

    Attributes
    ----------
    amps : numpy.ndarray
        Complex array of shape (cutoff + 1, cutoff + 1)
    cutoff : int
        Highest photon number per mode
    modes : tuple of int
        Labels of the two modes, first axis first
    """
    amps: np.ndarray
    cutoff: int
    modes: Tuple[int, int] = (0, 1)

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.cutoff + 1, self.cutoff + 1):
            raise OracleError(f"Expected a {(self.cutoff + 1, self.cutoff + 1)} grid, got {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "modes", tuple(self.modes))

    @property
    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.amps) ** 2))

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def axis_of(self, mode: int) -> int:
        if mode not in self.modes:
            raise OracleError(f"Mode {mode} is not carried by a state over modes {self.modes}")
        return self.modes.index(mode)


def oracle_cutoff(spec: StateSpec, port0: Optional[StateSpec] = None) -> int:
    """
    Grid cutoff for the oracle: the certified input cutoff(s) plus headroom.
    """
    cutoff = auto_cutoff(spec)
    if port0 is not None and not port0.is_vacuum:
        cutoff += auto_cutoff(port0)
    return cutoff + int(Conf().tolerance("oracle_headroom"))


def build_input(spec: StateSpec, cutoff: Optional[int] = None, port0: Optional[StateSpec] = None) -> TwoModeState:
    """
    Input state |ξ, a⟩₁ ⊗ |0⟩₀, or a product with a second state in port 0.

    Parameters
    ----------
    spec : StateSpec
        State in port 1
    cutoff : int, optional
        Grid cutoff; defaults to `oracle_cutoff`
    port0 : StateSpec, optional
        State in port 0 (vacuum when omitted)

    Returns
    -------
    TwoModeState
        Grid over modes (0, 1)

    Raises
    ------
    CutoffError
        If the port-1 state cannot be certified at ``cutoff``
    OracleError
        If the product support does not fit in the grid
    """
    if cutoff is None:
        cutoff = oracle_cutoff(spec, port0)
    grid = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    if port0 is None or port0.is_vacuum:
        grid[0, :] = state_amplitudes(spec, cutoff).amps
        return TwoModeState(grid, cutoff, (0, 1))

    amps1 = state_amplitudes(spec)
    amps0 = state_amplitudes(port0)
    if amps0.cutoff + amps1.cutoff > cutoff:
        raise OracleError(
            f"Product input needs cutoff >= {amps0.cutoff + amps1.cutoff}, got {cutoff}"
        )
    grid[: amps0.cutoff + 1, : amps1.cutoff + 1] = np.outer(amps0.amps, amps1.amps)
    return TwoModeState(grid, cutoff, (0, 1))


@lru_cache(maxsize=4096)
def _block_unitary(total: int, tau: float) -> np.ndarray:
    """exp[iτ(c₀†c₁ + c₁†c₀)] on the basis |k, total-k⟩, k = 0..total."""
    k = np.arange(total, dtype=float)
    off = np.sqrt((k + 1.0) * (total - k))
    generator = np.diag(off, -1) + np.diag(off, 1)
    unitary = expm(1j * tau * generator)
    unitary.setflags(write=False)
    return unitary


def _check_norm(state: TwoModeState, step: str) -> TwoModeState:
    tol = Conf().tolerance("unitarity")
    norm = state.norm_sq
    if abs(norm - 1.0) > tol:
        raise OracleError(f"Norm {norm!r} after {step} deviates from 1 by more than {tol:g}")
    return state


def apply_beam_splitter(state: TwoModeState, t_mag: float) -> TwoModeState:
    """
    Apply a beam splitter with transmission |α| = cos τ.

    Realized as exp[iτ(c₀†c₁ + c₁†c₀)] on the two grid axes, which gives
    c₀ → αc₀ + βc₁ and c₁ → βc₀ + αc₁ in the Heisenberg picture with
    β = i sin τ. The output modes are relabeled by +2 (0, 1 → 2, 3 → 4, 5).

    Raises
    ------
    OracleError
        If the state has support above total photon number ``cutoff`` or the
        norm drifts
    """
    if not 0.0 <= t_mag <= 1.0:
        raise ValueError(f"t_mag must be in [0, 1], got {t_mag!r}")
    cutoff = state.cutoff
    n = np.arange(cutoff + 1)
    outside = np.add.outer(n, n) > cutoff
    if np.any(state.amps[outside] != 0):
        raise OracleError("State has support above the total-photon cutoff; enlarge the grid")

    tau = math.acos(t_mag)
    out = np.array(state.amps)
    if tau != 0.0:
        for total in range(1, cutoff + 1):
            k = np.arange(total + 1)
            out[k, total - k] = _block_unitary(total, tau) @ state.amps[k, total - k]
    modes = (state.modes[0] + 2, state.modes[1] + 2)
    return _check_norm(TwoModeState(out, cutoff, modes), f"beam splitter |α|={t_mag:g}")


def apply_phases(state: TwoModeState, phases: PhaseConfig) -> TwoModeState:
    """
    Multiply amps[n₂, n₃] by e^{-iθ₂n₂} e^{-iθ₁n₃}.
    """
    n = np.arange(state.cutoff + 1)
    out = state.amps * np.exp(-1j * phases.theta2 * n)[:, None] * np.exp(-1j * phases.theta1 * n)[None, :]
    return _check_norm(TwoModeState(out, state.cutoff, state.modes), "phase shifts")


def _lower(psi: np.ndarray, axis: int) -> np.ndarray:
    psi = np.moveaxis(psi, axis, 0)
    out = np.zeros_like(psi)
    root = np.sqrt(np.arange(1, psi.shape[0], dtype=float))[:, None]
    out[:-1] = root * psi[1:]
    return np.moveaxis(out, 0, axis)


def _raise(psi: np.ndarray, axis: int) -> np.ndarray:
    psi = np.moveaxis(psi, axis, 0)
    out = np.zeros_like(psi)
    root = np.sqrt(np.arange(1, psi.shape[0], dtype=float))[:, None]
    out[1:] = root * psi[:-1]
    return np.moveaxis(out, 0, axis)


def _number(psi: np.ndarray, axis: int) -> np.ndarray:
    shape = [1, 1]
    shape[axis] = psi.shape[axis]
    return psi * np.arange(psi.shape[axis], dtype=float).reshape(shape)


def moments(state: TwoModeState, monomial: Sequence[str]) -> complex:
    """
    Expectation of a product of ladder and number operators.

    Tokens are ``b<mode>`` (annihilation), ``b<mode>+`` (creation) and
    ``g<mode>`` (photon number, degree 2), applied right to left like the
    written operator product.

    Parameters
    ----------
    state : TwoModeState
        State carrying the referenced modes
    monomial : sequence of str
        E.g. ``["b1+", "b1"]`` for ⟨b̂₁†b̂₁⟩

    Returns
    -------
    complex
        ⟨ψ| monomial |ψ⟩ on the truncated grid

    Raises
    ------
    MomentDegreeError
        If a token is malformed or the total degree exceeds 4

    Examples
    --------
    ```
    moments(state, ["g1"])           # mean photon number of mode 1
    moments(state, ["b0", "b1+"])    # ⟨b̂₀ b̂₁†⟩
    ```
    """
    parsed = []
    degree = 0
    for token in monomial:
        match = _TOKEN.match(token)
        if match is None or (match.group(1) == "g" and match.group(3)):
            raise MomentDegreeError(f"Unknown operator token {token!r}")
        kind, mode, dagger = match.group(1), int(match.group(2)), bool(match.group(3))
        degree += 2 if kind == "g" else 1
        parsed.append((kind, state.axis_of(mode), dagger))
    if degree > 4:
        raise MomentDegreeError(f"Monomial degree {degree} exceeds 4")

    psi = np.array(state.amps)
    for kind, axis, dagger in reversed(parsed):
        if kind == "g":
            psi = _number(psi, axis)
        elif dagger:
            psi = _raise(psi, axis)
        else:
            psi = _lower(psi, axis)
    return complex(np.vdot(state.amps, psi))
