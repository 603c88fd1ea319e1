"""
Quantum Fisher information of the two-arm phase estimation problem.

The phase shifts enter through the generators G_s = (ĝ₂+ĝ₃)/2 and
G_d = (ĝ₂-ĝ₃)/2, so for a pure input the QFIM elements are
H_ij = 4 Cov(G_i, G_j). From the 2×2 matrix three scalar figures follow:

- H^(a) = H_dd - H_sd²/H_ss, the phase difference with the phase sum unknown;
- H^(b) = H_dd + H_ss - 2H_sd = 4Δ²ĝ₃, a single phase shift in mode 3;
- H^(c) = (H_ss + H_dd)/2 = Δ²ĝ₂ + Δ²ĝ₃, the tabulated figure for
  symmetrically distributed shifts.

All figures are per shot.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from mzqfi.exceptions import DegenerateInputError
from mzqfi.qfi.moments import InputMoments
from mzqfi.specfun import bessel_i
from mzqfi.states import StateKind, StateSpec

logger = logging.getLogger(__name__)


class Scenario(str, Enum):
    """Phase-shift scenario a QFI refers to."""
    A = "a"
    B = "b"
    C = "c"


def qcrb(h: Optional[float]) -> Optional[float]:
    """Cramér-Rao bound 1/√h; ``inf`` for h <= 0 and ``None`` when h is undefined."""
    if h is None:
        return None
    if h <= 0:
        return math.inf
    return 1.0 / math.sqrt(h)


@dataclass(frozen=True)
class QfimResult:
    """
    QFIM elements and the derived single-parameter figures.

    Attributes
    ----------
    h_ss, h_dd, h_sd : float
        QFIM elements over (θ_s, θ_d)
    h_a : float or None
        H^(a); ``None`` when h_ss = 0
    h_b, h_c : float
        H^(b), H^(c)
    qcrb_a, qcrb_b, qcrb_c : float or None
        1/√h for each figure
    """
    h_ss: float
    h_dd: float
    h_sd: float
    h_a: Optional[float]
    h_b: float
    h_c: float
    qcrb_a: Optional[float] = None
    qcrb_b: Optional[float] = None
    qcrb_c: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "qcrb_a", qcrb(self.h_a))
        object.__setattr__(self, "qcrb_b", qcrb(self.h_b))
        object.__setattr__(self, "qcrb_c", qcrb(self.h_c))

    @classmethod
    def from_elements(cls, h_ss: float, h_dd: float, h_sd: float) -> "QfimResult":
        """Derive H^(a), H^(b), H^(c) from the matrix elements."""
        h_a = h_dd - h_sd * h_sd / h_ss if h_ss > 0 else None
        return cls(h_ss, h_dd, h_sd, h_a, h_dd + h_ss - 2.0 * h_sd, 0.5 * (h_ss + h_dd))

    def h(self, scenario: Scenario) -> Optional[float]:
        return {Scenario.A: self.h_a, Scenario.B: self.h_b, Scenario.C: self.h_c}[Scenario(scenario)]

    def bound(self, scenario: Scenario) -> Optional[float]:
        return {Scenario.A: self.qcrb_a, Scenario.B: self.qcrb_b, Scenario.C: self.qcrb_c}[Scenario(scenario)]


def true_symmetric_qfi(result: QfimResult) -> float:
    """
    Exact QFI for θ₁ = -θ₂ = θ/2, i.e. 4Δ²G_d = H_dd.

    It differs from the tabulated H^(c) by 2 Cov(ĝ₂, ĝ₃).
    """
    return result.h_dd


def _check_transmission(t_mag: float) -> float:
    if not 0.0 <= t_mag <= 1.0:
        raise ValueError(f"t_mag must be in [0, 1], got {t_mag!r}")
    return t_mag * t_mag


def qfim_general(m: InputMoments, t_mag: float) -> QfimResult:
    """
    QFIM for an arbitrary product input.

    With b̂₂ = αb̂₀ + βb̂₁, b̂₃ = βb̂₀ + αb̂₁ and Ĵ = i(b̂₀†b̂₁ - b̂₁†b̂₀):

    - ĝ₂ + ĝ₃ = ĝ₀ + ĝ₁, so H_ss = Δ²ĝ₀ + Δ²ĝ₁;
    - ĝ₂ - ĝ₃ = k(ĝ₀ - ĝ₁) + m Ĵ with k = |α|² - |β|², m = 2|αβ|;
    - H_dd = Δ²(ĝ₂ - ĝ₃), H_sd = Cov(ĝ₀ + ĝ₁, ĝ₂ - ĝ₃).

    Parameters
    ----------
    m : InputMoments
        Moments of both input ports
    t_mag : float
        |α| of the first beam splitter

    Returns
    -------
    QfimResult
        ``h_a`` is ``None`` when h_ss = 0
    """
    x = _check_transmission(t_mag)
    k = 2.0 * x - 1.0
    mix = 2.0 * math.sqrt(x * (1.0 - x))

    b0, b1 = m.mean_b0, m.mean_b1
    z = b0.conjugate() * b1
    mean_j = -2.0 * z.imag
    mean_j_sq = (
        -2.0 * (m.mean_b0_sq.conjugate() * m.mean_b1_sq).real
        + 2.0 * m.mean_g0 * m.mean_g1
        + m.mean_g0
        + m.mean_g1
    )
    var_j = mean_j_sq - mean_j * mean_j

    u0 = m.mean_g0_b0 - m.mean_g0 * b0
    u1 = m.mean_g1_b1 - m.mean_g1 * b1
    # symmetrized covariances of ĝ₀ and ĝ₁ with Ĵ
    cov0 = -2.0 * (u0.conjugate() * b1).imag - z.imag
    cov1 = 2.0 * (u1.conjugate() * b0).imag - z.imag

    h_ss = m.var_g0 + m.var_g1
    h_dd = k * k * h_ss + mix * mix * var_j + 2.0 * k * mix * (cov0 - cov1)
    h_sd = k * (m.var_g0 - m.var_g1) + mix * (cov0 + cov1)
    return QfimResult.from_elements(h_ss, h_dd, h_sd)


def qfi_vacuum_port(m: InputMoments, t_mag: float) -> QfimResult:
    """
    QFIM with vacuum in port 0.

    H^(a) = 4|αβ|²⟨ĝ₁⟩, H^(b) = 4|α|⁴Δ²ĝ₁ + 4|αβ|²⟨ĝ₁⟩,
    H^(c) = (|α|⁴ + |β|⁴)Δ²ĝ₁ + 2|αβ|²⟨ĝ₁⟩.

    Raises
    ------
    ValueError
        If a port-0 moment is nonzero
    """
    if not m.is_vacuum_port:
        raise ValueError("qfi_vacuum_port needs vacuum in port 0; use qfim_general")
    x = _check_transmission(t_mag)
    n, var = m.mean_g1, m.var_g1
    xy = x * (1.0 - x)
    return QfimResult(
        h_ss=var,
        h_dd=(1.0 - 2.0 * x) ** 2 * var + 4.0 * xy * n,
        h_sd=(1.0 - 2.0 * x) * var,
        h_a=4.0 * xy * n if var > 0 else None,
        h_b=4.0 * x * x * var + 4.0 * xy * n,
        h_c=(x * x + (1.0 - x) ** 2) * var + 2.0 * xy * n,
    )


def qfi_closed_form(spec: StateSpec, t_mag: float, scenario: Scenario) -> float:
    """
    Closed-form H^(a), H^(b) or H^(c) for a coherent state plus vacuum.

    Perelomov states:
    H^(a) = 4a|αβ|²(cosh v - 1),
    H^(b) = 4a|α|²(½|α|² sinh² v + |β|²(cosh v - 1)),
    H^(c) = (|α|⁴ + |β|⁴)(a/2) sinh² v + 2a|αβ|²(cosh v - 1).

    Barut-Girardello states, with I_k at 2|ξ| and
    X = I_{2a-1}(|ξ|I_{2a+1} + I_{2a}) - |ξ|I²_{2a}:
    H^(a) = 4|ξ||αβ|² I_{2a}/I_{2a-1},
    H^(b) = 4|α|⁴|ξ|X/I²_{2a-1} + 4|ξ||αβ|² I_{2a}/I_{2a-1},
    H^(c) = (|α|⁴ + |β|⁴)|ξ|X/I²_{2a-1} + 2|ξ||αβ|² I_{2a}/I_{2a-1}.

    Examples
    --------
    ```
    qfi_closed_form(StateSpec.perelomov(a=1, v=1.0), 1.0, Scenario.B)  # 2 sinh²(1)
    ```
    """
    x = _check_transmission(t_mag)
    scenario = Scenario(scenario)
    if spec.is_vacuum:
        return 0.0
    xy = x * (1.0 - x)
    a = spec.bargmann_a
    if spec.kind is StateKind.PERELOMOV:
        v = spec.squeeze_v
        ch = math.cosh(v) - 1.0
        sh2 = math.sinh(v) ** 2
        if scenario is Scenario.A:
            return 4.0 * a * xy * ch
        if scenario is Scenario.B:
            return 4.0 * a * x * (0.5 * x * sh2 + (1.0 - x) * ch)
        return (x * x + (1.0 - x) ** 2) * 0.5 * a * sh2 + 2.0 * a * xy * ch

    z = spec.xi_mag
    order = spec.two_a - 1
    i_low, i_mid, i_high = (bessel_i(order + j, 2.0 * z) for j in range(3))
    mean = z * i_mid / i_low
    if scenario is Scenario.A:
        return 4.0 * xy * mean
    var = z * (i_low * (z * i_high + i_mid) - z * i_mid * i_mid) / (i_low * i_low)
    if scenario is Scenario.B:
        return 4.0 * x * x * var + 4.0 * xy * mean
    return (x * x + (1.0 - x) ** 2) * var + 2.0 * xy * mean


def h_b_polynomial(m: InputMoments) -> Tuple[float, float]:
    """
    Coefficients (c₁, c₂) of H^(b) = c₁|α|² + c₂|α|⁴ with vacuum in port 0.
    """
    n, var = m.mean_g1, m.var_g1
    return 4.0 * n, -4.0 * (n - var)


@dataclass(frozen=True)
class OptimalTransmission:
    """Transmission magnitude maximizing H^(b), and the maximum."""
    alpha_opt: float
    h_max: float


def optimal_transmission_b(m: InputMoments) -> OptimalTransmission:
    """
    Transmission |α| maximizing H^(b) for vacuum in port 0.

    If Δ²ĝ₁ >= ⟨ĝ₁⟩/2 the maximum sits at |α| = 1 with H = 4Δ²ĝ₁. Otherwise
    |α|² = ⟨ĝ₁⟩/(2(⟨ĝ₁⟩ - Δ²ĝ₁)) and H_max = ⟨ĝ₁⟩²/(⟨ĝ₁⟩ - Δ²ĝ₁).

    Raises
    ------
    DegenerateInputError
        If ⟨ĝ₁⟩ = 0
    ValueError
        If port 0 is not in vacuum

    Examples
    --------
    ```
    optimal_transmission_b(InputMoments(mean_g1=1.0, var_g1=0.25))
    # OptimalTransmission(alpha_opt=0.816496..., h_max=1.333...)
    ```
    """
    if not m.is_vacuum_port:
        raise ValueError("optimal_transmission_b needs vacuum in port 0")
    n, var = m.mean_g1, m.var_g1
    if n <= 0:
        raise DegenerateInputError("No optimum: the input carries no photons")
    if var >= 0.5 * n:
        return OptimalTransmission(1.0, 4.0 * var)
    x_opt = n / (2.0 * (n - var))
    logger.debug(f"Sub-threshold variance {var:g} < {n / 2:g}: interior optimum |α|² = {x_opt:g}")
    return OptimalTransmission(math.sqrt(x_opt), n * n / (n - var))


def snl(mean_photons: float) -> float:
    """
    Shot-noise limit 1/√⟨N⟩.

    Raises
    ------
    DegenerateInputError
        If ``mean_photons`` <= 0
    """
    if not mean_photons > 0:
        raise DegenerateInputError(f"SNL needs a positive mean photon number, got {mean_photons!r}")
    return 1.0 / math.sqrt(mean_photons)
