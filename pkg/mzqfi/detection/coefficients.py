"""
Coefficients mapping the input photon statistics onto the output-port
observables.

With a single phase θ in mode 3 and vacuum in port 0, output mode 4 reads
b̂₄ = c₀ b̂₀ + c₁ b̂₁ with

    c₀ = αα′ + ββ′e^{-iθ},    c₁ = α′β + αβ′e^{-iθ}.
"""

import cmath
import math
from dataclasses import dataclass
from typing import Tuple


@dataclass(frozen=True)
class DifCoefficients:
    """δ_A and δ_B of the intensity-difference signal; δ_A² + |δ_B|² = 1."""
    delta_a: float
    delta_b: complex


@dataclass(frozen=True)
class SingCoefficients:
    """δ₀, δ₁ and δ₃ of the single-port intensity; δ₀ + δ₁ = 1, |δ₃|² = δ₀δ₁."""
    delta0: float
    delta1: float
    delta3: complex


def _magnitudes(t1: float, t2: float) -> Tuple[float, float, float, float]:
    for name, value in (("t1", t1), ("t2", t2)):
        if not 0.0 <= value <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {value!r}")
    return t1, math.sqrt(1.0 - t1 * t1), t2, math.sqrt(1.0 - t2 * t2)


def output_coefficients(t1: float, t2: float, theta: float) -> Tuple[complex, complex]:
    """(c₀, c₁): weights of b̂₀ and b̂₁ in b̂₄, with β = i|β| and β′ = i|β′|."""
    alpha, beta_mag, alpha_p, beta_p_mag = _magnitudes(t1, t2)
    beta, beta_p = 1j * beta_mag, 1j * beta_p_mag
    phase = cmath.exp(-1j * theta)
    return alpha * alpha_p + beta * beta_p * phase, alpha_p * beta + alpha * beta_p * phase


def dif_coefficients(t1: float, t2: float, theta: float) -> DifCoefficients:
    """
    δ_A = 1 - 2(|α||β′| + |β||α′|)² + 4|αβ||α′β′|(1 - cos θ) and δ_B = 2c₀*c₁.

    Parameters
    ----------
    t1, t2 : float
        |α| and |α′|
    theta : float
        Phase difference in radians

    Examples
    --------
    ```
    dif_coefficients(1.0, 1.0, 0.3)  # DifCoefficients(delta_a=1.0, delta_b=0j)
    ```
    """
    alpha, beta, alpha_p, beta_p = _magnitudes(t1, t2)
    delta_a = (
        1.0
        - 2.0 * (alpha * beta_p + beta * alpha_p) ** 2
        + 4.0 * alpha * beta * alpha_p * beta_p * (1.0 - math.cos(theta))
    )
    c0, c1 = output_coefficients(t1, t2, theta)
    return DifCoefficients(delta_a, 2.0 * c0.conjugate() * c1)


def sing_coefficients(t1: float, t2: float, theta: float) -> SingCoefficients:
    """
    δ₀ = |αα′|² + |ββ′|² - 2|αα′ββ′|cos θ, δ₁ = |α′β|² + |αβ′|² + 2|αα′ββ′|cos θ
    and δ₃ = c₀*c₁, the weight of the b̂₀†b̂₁ cross term in ĝ₄.
    """
    alpha, beta, alpha_p, beta_p = _magnitudes(t1, t2)
    mixed = 2.0 * alpha * alpha_p * beta * beta_p * math.cos(theta)
    delta0 = (alpha * alpha_p) ** 2 + (beta * beta_p) ** 2 - mixed
    delta1 = (alpha_p * beta) ** 2 + (alpha * beta_p) ** 2 + mixed
    c0, c1 = output_coefficients(t1, t2, theta)
    return SingCoefficients(delta0, delta1, c0.conjugate() * c1)
