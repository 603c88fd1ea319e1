"""
Closed-form phase sensitivities Δθ = ΔŜ / |∂⟨Ŝ⟩/∂θ| of the three detection
schemes for a coherent state in port 1 and vacuum in port 0.

Writing n = ⟨ĝ₁⟩, Δ² = Δ²ĝ₁ and K = |αα′ββ′|:

    Δθ_dif  = √(δ_A²Δ² + |δ_B|²n) / (4K |sin θ| n)
    Δθ_sing = √(δ₁²Δ² + |δ₃|²n) / (2K |sin θ| n)

Both depend on the phases only through θ₁ - θ₂, so they hold for the
asymmetric and the symmetric placement alike. Homodyne detection measures
X̂ = Re(e^{-iθ_L} b̂₄); with b̂₄ = c₀b̂₀ + c₁b̂₁,

    ⟨X̂⟩ = Re(e^{-iθ_L} c₁⟨b̂₁⟩)
    Δ²X̂ = 1/4 + Re(e^{-2iθ_L} c₁² Δ²b̂₁)/2 + |c₁|²(n - |⟨b̂₁⟩|²)/2
"""

import cmath
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from scipy.optimize import minimize_scalar

from mzqfi.conf import Conf
from mzqfi.detection.coefficients import dif_coefficients, sing_coefficients
from mzqfi.detection.homodyne import homodyne_series, locked_lo_phase
from mzqfi.exceptions import ConfigurationDegenerate, DerivativeVanishes
from mzqfi.qfi import Scenario, qcrb, qfi_closed_form
from mzqfi.states import StateSpec, closed_form_stats

logger = logging.getLogger(__name__)


class Scheme(str, Enum):
    """Detection scheme at the interferometer output."""
    INTENSITY_DIFFERENCE = "intensity_difference"
    SINGLE_MODE = "single_mode"
    HOMODYNE_B = "homodyne_b"
    HOMODYNE_C = "homodyne_c"

    @property
    def scenario(self) -> Scenario:
        """QFI scenario whose bound applies to the scheme."""
        if self is Scheme.HOMODYNE_B:
            return Scenario.B
        if self is Scheme.HOMODYNE_C:
            return Scenario.C
        return Scenario.A

    @property
    def is_homodyne(self) -> bool:
        return self in (Scheme.HOMODYNE_B, Scheme.HOMODYNE_C)

    @property
    def short_name(self) -> str:
        """Column stem used in sweep tables: dif, sing, hom_b, hom_c."""
        return {
            Scheme.INTENSITY_DIFFERENCE: "dif",
            Scheme.SINGLE_MODE: "sing",
            Scheme.HOMODYNE_B: "hom_b",
            Scheme.HOMODYNE_C: "hom_c",
        }[self]


@dataclass(frozen=True)
class SensitivityPoint:
    """
    One evaluated phase sensitivity.

    Attributes
    ----------
    scheme : Scheme
        Detection scheme
    theta : float
        Working point in radians
    delta_theta : float
        Δθ in radians
    qcrb_ref : float
        Cramér-Rao bound of the matching scenario
    """
    scheme: Scheme
    theta: float
    delta_theta: float
    qcrb_ref: float

    def within_bound(self, slack: Optional[float] = None) -> bool:
        """True when Δθ >= qcrb_ref - slack."""
        if slack is None:
            slack = Conf().tolerance("qcrb_slack")
        return self.delta_theta >= self.qcrb_ref - slack


def _splitter_product(t1: float, t2: float) -> float:
    return t1 * math.sqrt(max(0.0, 1.0 - t1 * t1)) * t2 * math.sqrt(max(0.0, 1.0 - t2 * t2))


def _bound(spec: StateSpec, t1: float, scheme: Scheme) -> float:
    bound = qcrb(qfi_closed_form(spec, t1, scheme.scenario))
    return math.inf if bound is None else bound


def _number_scheme_inputs(spec: StateSpec, t1: float, t2: float, theta: float) -> Tuple[float, float, float]:
    guard = Conf().tolerance("singular_guard")
    product = _splitter_product(t1, t2)
    if product < guard:
        raise DerivativeVanishes(f"|αα′ββ′| = {product:g}: a beam splitter does not mix the arms")
    if abs(math.sin(theta)) < guard:
        raise DerivativeVanishes(f"sin θ vanishes at θ = {theta!r}")
    stats = closed_form_stats(spec)
    if stats.mean <= 0:
        raise DerivativeVanishes(f"{spec.label} carries no photons")
    return product, stats.mean, stats.variance


def sensitivity_dif(spec: StateSpec, t1: float, t2: float, theta: float) -> SensitivityPoint:
    """
    Intensity-difference sensitivity, Ŝ = ĝ₄ - ĝ₅.

    For Perelomov states this reads
    √(½δ_A² sinh²v + |δ_B|²(cosh v - 1)) / (4√a K |(cosh v - 1) sin θ|).

    Raises
    ------
    DerivativeVanishes
        If sin θ = 0, a splitter magnitude is 0 or 1, or the state is empty
    """
    product, n, var = _number_scheme_inputs(spec, t1, t2, theta)
    coeff = dif_coefficients(t1, t2, theta)
    noise = math.sqrt(coeff.delta_a ** 2 * var + abs(coeff.delta_b) ** 2 * n)
    slope = 4.0 * product * abs(math.sin(theta)) * n
    return SensitivityPoint(Scheme.INTENSITY_DIFFERENCE, theta, noise / slope, _bound(spec, t1, Scheme.INTENSITY_DIFFERENCE))


def sensitivity_sing(spec: StateSpec, t1: float, t2: float, theta: float) -> SensitivityPoint:
    """
    Single-port intensity sensitivity, Ŝ = ĝ₄.

    Raises
    ------
    DerivativeVanishes
        As `sensitivity_dif`
    """
    product, n, var = _number_scheme_inputs(spec, t1, t2, theta)
    coeff = sing_coefficients(t1, t2, theta)
    noise = math.sqrt(coeff.delta1 ** 2 * var + abs(coeff.delta3) ** 2 * n)
    slope = 2.0 * product * abs(math.sin(theta)) * n
    return SensitivityPoint(Scheme.SINGLE_MODE, theta, noise / slope, _bound(spec, t1, Scheme.SINGLE_MODE))


def homodyne_coefficients(t1: float, t2: float, theta: float, scenario: Scenario) -> Tuple[complex, complex]:
    """
    c₁ and dc₁/dθ, the weight of b̂₁ in b̂₄ and its slope.

    Scenario b (θ in mode 3): c₁ = α′β + αβ′e^{-iθ}.
    Scenario c (±θ/2):       c₁ = α′βe^{iθ/2} + αβ′e^{-iθ/2}.
    """
    beta = 1j * math.sqrt(max(0.0, 1.0 - t1 * t1))
    beta_p = 1j * math.sqrt(max(0.0, 1.0 - t2 * t2))
    if Scenario(scenario) is Scenario.B:
        rotated = t1 * beta_p * cmath.exp(-1j * theta)
        return t2 * beta + rotated, -1j * rotated
    upper = t2 * beta * cmath.exp(0.5j * theta)
    lower = t1 * beta_p * cmath.exp(-0.5j * theta)
    return upper + lower, 0.5j * (upper - lower)


def sensitivity_hom(
    spec: StateSpec,
    t1: float,
    t2: float,
    theta: float,
    scenario: Scenario,
    theta_l: Optional[float] = None,
) -> SensitivityPoint:
    """
    Balanced homodyne sensitivity for scenario b or c.

    Parameters
    ----------
    spec : StateSpec
        Input state
    t1, t2 : float
        |α| and |α′|
    theta : float
        Working point in radians
    scenario : Scenario
        ``Scenario.B`` or ``Scenario.C``
    theta_l : float, optional
        Local-oscillator phase; defaults to the locked phase arg ξ

    Raises
    ------
    ConfigurationDegenerate
        Scenario c with ||α′β| - |αβ′|| below the degeneracy threshold
    DerivativeVanishes
        If the slope of ⟨X̂⟩ is at or below the derivative floor

    Examples
    --------
    ```
    pcs = StateSpec.perelomov(a=1, v=1.0)
    sensitivity_hom(pcs, 1.0, 0.0, 0.0, Scenario.B).delta_theta  # ~0.6156
    ```
    """
    scenario = Scenario(scenario)
    if scenario is Scenario.A:
        raise ValueError("Homodyne sensitivities are defined for scenarios b and c")
    conf = Conf()
    beta_mag = math.sqrt(max(0.0, 1.0 - t1 * t1))
    beta_p_mag = math.sqrt(max(0.0, 1.0 - t2 * t2))
    if scenario is Scenario.B and t1 * beta_p_mag < conf.tolerance("singular_guard"):
        raise DerivativeVanishes("|αβ′| = 0: the phase never reaches output 4")
    if scenario is Scenario.C:
        gap = abs(t2 * beta_mag - t1 * beta_p_mag)
        if gap < conf.tolerance("degenerate_threshold"):
            raise ConfigurationDegenerate(f"||α′β| - |αβ′|| = {gap:g}: symmetric homodyne is blind")

    series = homodyne_series(spec)
    if series.nu == 0:
        raise DerivativeVanishes(f"{spec.label} has no coherent amplitude")
    chi = locked_lo_phase(spec)
    if theta_l is None:
        theta_l = chi
    mean_b1 = series.nu * cmath.exp(1j * chi)
    var_b1 = series.mu * cmath.exp(2j * chi)
    incoherent = series.g_bar - abs(series.nu) ** 2

    c1, dc1 = homodyne_coefficients(t1, t2, theta, scenario)
    lo = cmath.exp(-1j * theta_l)
    mean_x = (lo * c1 * mean_b1).real
    slope = (lo * dc1 * mean_b1).real
    variance = 0.25 + 0.5 * (lo * lo * c1 * c1 * var_b1).real + 0.5 * abs(c1) ** 2 * incoherent
    if abs(slope) <= conf.tolerance("derivative_floor") * (1.0 + abs(mean_x)):
        raise DerivativeVanishes(f"d⟨X⟩/dθ vanishes at θ = {theta!r}")

    scheme = Scheme.HOMODYNE_B if scenario is Scenario.B else Scheme.HOMODYNE_C
    return SensitivityPoint(scheme, theta, math.sqrt(variance) / abs(slope), _bound(spec, t1, scheme))


def sensitivity(
    scheme: Scheme,
    spec: StateSpec,
    t1: float,
    t2: float,
    theta: float,
    theta_l: Optional[float] = None,
) -> SensitivityPoint:
    """Dispatch to the closed form of ``scheme``."""
    scheme = Scheme(scheme)
    if scheme is Scheme.INTENSITY_DIFFERENCE:
        return sensitivity_dif(spec, t1, t2, theta)
    if scheme is Scheme.SINGLE_MODE:
        return sensitivity_sing(spec, t1, t2, theta)
    return sensitivity_hom(spec, t1, t2, theta, scheme.scenario, theta_l)


def performance_ratio(
    spec_p: StateSpec,
    spec_b: StateSpec,
    scheme: Scheme,
    t1: float,
    t2: float,
    theta: float,
) -> float:
    """
    R = Δθ_P / Δθ_B for two input states under the same scheme and settings.

    Raises
    ------
    DerivativeVanishes
        If either sensitivity diverges
    """
    first = sensitivity(scheme, spec_p, t1, t2, theta).delta_theta
    second = sensitivity(scheme, spec_b, t1, t2, theta).delta_theta
    return first / second


def default_theta_bounds(scheme: Scheme) -> Tuple[float, float]:
    """Open interval between consecutive singular points of ``scheme``, shrunk by the θ offset."""
    eps = Conf().tolerance("theta_offset")
    scheme = Scheme(scheme)
    if scheme is Scheme.HOMODYNE_B:
        return -0.5 * math.pi + eps, 0.5 * math.pi - eps
    if scheme is Scheme.HOMODYNE_C:
        return -math.pi + eps, math.pi - eps
    return eps, math.pi - eps


def optimal_theta(
    scheme: Scheme,
    spec: StateSpec,
    t1: float,
    t2: float,
    bounds: Optional[Tuple[float, float]] = None,
) -> SensitivityPoint:
    """
    Working point minimizing Δθ, by bounded scalar minimization.

    Parameters
    ----------
    scheme : Scheme
        Detection scheme
    spec : StateSpec
        Input state
    t1, t2 : float
        |α| and |α′|
    bounds : tuple of float, optional
        Search interval; defaults to `default_theta_bounds`

    Returns
    -------
    SensitivityPoint
        The sensitivity at the optimum found
    """
    lower, upper = bounds or default_theta_bounds(scheme)
    result = minimize_scalar(
        lambda theta: sensitivity(scheme, spec, t1, t2, theta).delta_theta,
        bounds=(lower, upper),
        method="bounded",
        options={"xatol": Conf().tolerance("optimum_xatol")},
    )
    logger.debug(f"{Scheme(scheme).value} optimum for {spec.label}: θ = {result.x:.9g} after {result.nfev} evaluations")
    return sensitivity(scheme, spec, t1, t2, float(result.x))
