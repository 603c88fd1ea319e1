"""
Perelomov and Barut-Girardello coherent states of SU(1,1) on a truncated
single-mode Fock basis, their closed-form photon statistics, and the lowering
operator of the Holstein-Primakoff realization.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from mzqfi.conf import Conf
from mzqfi.exceptions import CutoffError
from mzqfi.specfun import bessel_ratio
from mzqfi.states.cutoff import auto_cutoff, log_probability, tail_bound
from mzqfi.states.state_spec import StateKind, StateSpec

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhotonStatistics:
    """
    Mean and variance of the photon number ĝ₁ of an input state.

    Attributes
    ----------
    mean : float
        ⟨ĝ₁⟩
    variance : float
        Δ²ĝ₁
    """
    mean: float
    variance: float

    def __post_init__(self):
        if self.mean < 0 or self.variance < 0:
            raise ValueError(f"Photon statistics must be nonnegative, got {self}")


@dataclass(frozen=True, eq=False)
class FockAmplitudes:
    """
    Complex amplitudes of a single-mode state on photon numbers 0..cutoff.

    Attributes
    ----------
    amps : numpy.ndarray
        Amplitudes, length ``cutoff + 1``
    cutoff : int
        Highest photon number kept
    tail_mass : float
        Upper bound on the probability discarded above the cutoff
    """
    amps: np.ndarray
    cutoff: int
    tail_mass: float = 0.0

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        if amps.shape != (self.cutoff + 1,):
            raise ValueError(f"Expected {self.cutoff + 1} amplitudes, got shape {amps.shape}")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @property
    def photon_numbers(self) -> np.ndarray:
        return np.arange(self.cutoff + 1, dtype=float)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    @property
    def norm_sq(self) -> float:
        return float(self.probabilities.sum())

    def mean_photons(self) -> float:
        return float(self.photon_numbers @ self.probabilities)

    def photon_variance(self) -> float:
        g = self.photon_numbers
        p = self.probabilities
        mean = g @ p
        return float((g * g) @ p - mean * mean)

    def field_mean(self) -> complex:
        """⟨b̂⟩ = Σ √g c*_{g-1} c_g."""
        g = self.photon_numbers[1:]
        return complex(np.sum(np.sqrt(g) * np.conj(self.amps[:-1]) * self.amps[1:]))

    def field_square_mean(self) -> complex:
        """⟨b̂²⟩ = Σ √(g(g-1)) c*_{g-2} c_g."""
        g = self.photon_numbers[2:]
        return complex(np.sum(np.sqrt(g * (g - 1.0)) * np.conj(self.amps[:-2]) * self.amps[2:]))

    def number_field_mean(self) -> complex:
        """⟨ĝ b̂⟩ = Σ (g-1) √g c*_{g-1} c_g."""
        g = self.photon_numbers[1:]
        return complex(np.sum((g - 1.0) * np.sqrt(g) * np.conj(self.amps[:-1]) * self.amps[1:]))


def _amplitudes(spec: StateSpec, cutoff: int, check_tail: bool) -> FockAmplitudes:
    if int(cutoff) != cutoff or cutoff < 1:
        raise ValueError(f"cutoff must be a positive integer, got {cutoff!r}")
    cutoff = int(cutoff)
    if spec.is_vacuum:
        amps = np.zeros(cutoff + 1, dtype=complex)
        amps[0] = 1.0
        return FockAmplitudes(amps, cutoff, 0.0)

    tail = tail_bound(spec, cutoff)
    tol = Conf().tolerance("tail_tolerance")
    if check_tail and tail > tol:
        raise CutoffError(
            f"{spec.label}: tail mass bound {tail:.3g} exceeds {tol:g} at cutoff {cutoff}"
        )
    g = np.arange(cutoff + 1)
    magnitudes = np.exp(0.5 * log_probability(spec, g))
    amps = magnitudes * np.exp(1j * cmath.phase(spec.xi) * g)
    return FockAmplitudes(amps, cutoff, min(tail, 1.0))


def pcs_amplitudes(spec: StateSpec, cutoff: int, check_tail: bool = True) -> FockAmplitudes:
    """
    Fock amplitudes of a Perelomov coherent state.

    amps[g] = (1 - |ξ|²)^a √(Γ(g+2a) / (g! Γ(2a))) ξ^g with ξ = e^{-iφ} tanh(v/2).

    Parameters
    ----------
    spec : StateSpec
        A Perelomov spec
    cutoff : int
        Highest photon number kept, >= 1
    check_tail : bool
        Reject cutoffs whose tail bound exceeds the configured tolerance

    Raises
    ------
    CutoffError
        If ``check_tail`` and the discarded probability may exceed the tolerance
    """
    if spec.kind is not StateKind.PERELOMOV:
        raise ValueError(f"pcs_amplitudes needs a Perelomov spec, got {spec.kind.value}")
    return _amplitudes(spec, cutoff, check_tail)


def bgcs_amplitudes(spec: StateSpec, cutoff: int, check_tail: bool = True) -> FockAmplitudes:
    """
    Fock amplitudes of a Barut-Girardello coherent state.

    amps[g] = √(|ξ|^{2a-1} / I_{2a-1}(2|ξ|)) ξ^g / √(g! Γ(g+2a)). ξ = 0 is the
    exact vacuum.

    Raises
    ------
    CutoffError
        If ``check_tail`` and the discarded probability may exceed the tolerance
    """
    if spec.kind is not StateKind.BARUT_GIRARDELLO:
        raise ValueError(f"bgcs_amplitudes needs a Barut-Girardello spec, got {spec.kind.value}")
    return _amplitudes(spec, cutoff, check_tail)


def state_amplitudes(spec: StateSpec, cutoff: Optional[int] = None, check_tail: bool = True) -> FockAmplitudes:
    """
    Fock amplitudes of any input state, at the certified cutoff by default.
    """
    if cutoff is None:
        cutoff = auto_cutoff(spec)
    if spec.kind is StateKind.PERELOMOV:
        return pcs_amplitudes(spec, cutoff, check_tail)
    if spec.kind is StateKind.BARUT_GIRARDELLO:
        return bgcs_amplitudes(spec, cutoff, check_tail)
    return _amplitudes(spec, cutoff, check_tail)


def lowering_apply(state: FockAmplitudes, a: float) -> FockAmplitudes:
    """
    Apply the SU(1,1) lowering operator Â₋ |a, g⟩ = √(g(2a+g-1)) |a, g-1⟩.

    The result is not normalized; its top component is zero because the
    truncated state has nothing above the cutoff to lower.

    Parameters
    ----------
    state : FockAmplitudes
        Input amplitudes
    a : float
        Bargmann index

    Returns
    -------
    FockAmplitudes
        out[g] = √((g+1)(2a+g)) state[g+1]
    """
    if a <= 0:
        raise ValueError(f"Bargmann index must be positive, got {a!r}")
    g = np.arange(state.cutoff, dtype=float)
    out = np.zeros(state.cutoff + 1, dtype=complex)
    out[:-1] = np.sqrt((g + 1.0) * (2.0 * a + g)) * state.amps[1:]
    return FockAmplitudes(out, state.cutoff, state.tail_mass)


def closed_form_stats(spec: StateSpec) -> PhotonStatistics:
    """
    Exact mean and variance of ĝ₁.

    Perelomov: ⟨ĝ₁⟩ = a(cosh v - 1), Δ²ĝ₁ = (a/2) sinh² v.
    Barut-Girardello: ⟨ĝ₁⟩ = |ξ| I_{2a}/I_{2a-1}, Δ²ĝ₁ = |ξ| X / I²_{2a-1}
    with X = I_{2a-1}(|ξ|I_{2a+1} + I_{2a}) - |ξ| I²_{2a}, all at 2|ξ|.
    X / I²_{2a-1} is evaluated from Bessel ratios.

    Examples
    --------
    ```
    closed_form_stats(StateSpec.perelomov(a=1, v=1.0))
    # PhotonStatistics(mean=0.5430806348..., variance=0.6905489228...)
    ```
    """
    if spec.is_vacuum:
        return PhotonStatistics(0.0, 0.0)
    a = spec.bargmann_a
    if spec.kind is StateKind.PERELOMOV:
        v = spec.squeeze_v
        return PhotonStatistics(a * (math.cosh(v) - 1.0), 0.5 * a * math.sinh(v) ** 2)

    z = spec.xi_mag
    r1 = bessel_ratio(spec.two_a - 1, 2.0 * z)
    r2 = bessel_ratio(spec.two_a, 2.0 * z)
    return PhotonStatistics(z * r1, z * (z * r1 * r2 + r1 - z * r1 * r1))


def casimir_on_basis(a: float, g: int) -> float:
    """
    Casimir Â_z² - (Â₊Â₋ + Â₋Â₊)/2 on the basis state |a, g⟩, from the ladder
    matrix elements Â_z = a + g, Â₊Â₋ = g(2a+g-1), Â₋Â₊ = (g+1)(2a+g).

    Equals a(a-1) for every g; all terms are exact in binary floating point
    for half-integer a and moderate g.
    """
    if g < 0:
        raise ValueError(f"g must be nonnegative, got {g!r}")
    up_down = g * (2.0 * a + g - 1.0)
    down_up = (g + 1.0) * (2.0 * a + g)
    return (a + g) ** 2 - 0.5 * (up_down + down_up)
