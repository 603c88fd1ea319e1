from dataclasses import dataclass
from typing import Optional

from mzqfi.states import FockAmplitudes, PhotonStatistics, StateSpec, closed_form_stats


@dataclass(frozen=True)
class InputMoments:
    """
    Single-mode moments of the product input state in ports 0 and 1.

    Every expectation that enters the QFIM element formulas for a product
    input is stored here. Field moments of mode 1 can be left at zero when
    port 0 is in vacuum: they then drop out of every QFI.

    Attributes
    ----------
    mean_g0, mean_g1 : float
        ⟨ĝ₀⟩, ⟨ĝ₁⟩
    var_g0, var_g1 : float
        Δ²ĝ₀, Δ²ĝ₁
    mean_b0, mean_b1 : complex
        ⟨b̂₀⟩, ⟨b̂₁⟩
    mean_b0_sq, mean_b1_sq : complex
        ⟨b̂₀²⟩, ⟨b̂₁²⟩
    mean_g0_b0, mean_g1_b1 : complex
        ⟨ĝ₀b̂₀⟩, ⟨ĝ₁b̂₁⟩
    """
    mean_g0: float = 0.0
    mean_g1: float = 0.0
    var_g0: float = 0.0
    var_g1: float = 0.0
    mean_b0: complex = 0j
    mean_b1: complex = 0j
    mean_b0_sq: complex = 0j
    mean_b1_sq: complex = 0j
    mean_g0_b0: complex = 0j
    mean_g1_b1: complex = 0j

    def __post_init__(self):
        for name in ("mean_g0", "mean_g1", "var_g0", "var_g1"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative, got {getattr(self, name)!r}")

    @property
    def mean_b0dag_g0(self) -> complex:
        """⟨b̂₀†ĝ₀⟩, the conjugate of ⟨ĝ₀b̂₀⟩."""
        return self.mean_g0_b0.conjugate()

    @property
    def mean_b1dag_g1(self) -> complex:
        """⟨b̂₁†ĝ₁⟩, the conjugate of ⟨ĝ₁b̂₁⟩."""
        return self.mean_g1_b1.conjugate()

    @property
    def is_vacuum_port(self) -> bool:
        """True when every port-0 moment vanishes."""
        return all(
            value == 0
            for value in (
                self.mean_g0, self.var_g0, self.mean_b0, self.mean_b0_sq, self.mean_g0_b0,
            )
        )

    @classmethod
    def from_stats(cls, stats: PhotonStatistics) -> "InputMoments":
        """Vacuum in port 0 and the given photon statistics in port 1."""
        return cls(mean_g1=stats.mean, var_g1=stats.variance)

    @classmethod
    def from_spec(cls, spec: StateSpec) -> "InputMoments":
        """Vacuum in port 0 and the closed-form statistics of ``spec`` in port 1."""
        return cls.from_stats(closed_form_stats(spec))

    @classmethod
    def from_amplitudes(cls, port1: FockAmplitudes, port0: Optional[FockAmplitudes] = None) -> "InputMoments":
        """
        Moments of a product input computed from Fock amplitudes.
        """
        fields = dict(
            mean_g1=port1.mean_photons(),
            var_g1=max(0.0, port1.photon_variance()),
            mean_b1=port1.field_mean(),
            mean_b1_sq=port1.field_square_mean(),
            mean_g1_b1=port1.number_field_mean(),
        )
        if port0 is not None:
            fields.update(
                mean_g0=port0.mean_photons(),
                var_g0=max(0.0, port0.photon_variance()),
                mean_b0=port0.field_mean(),
                mean_b0_sq=port0.field_square_mean(),
                mean_g0_b0=port0.number_field_mean(),
            )
        return cls(**fields)
