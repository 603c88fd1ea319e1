import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

from mzqfi.conf import Conf

_TWO_PI = 2.0 * math.pi


class StateKind(str, Enum):
    """Family of a single-mode input state."""
    PERELOMOV = "perelomov"
    BARUT_GIRARDELLO = "barut_girardello"
    VACUUM = "vacuum"


@dataclass(frozen=True)
class StateSpec:
    """
    Declarative description of the state fed into port 1 of the interferometer.

    Perelomov coherent states are parametrized by the hyperbolic angle ``v``
    and the azimuth ``phi``, with ξ = e^{-iφ} tanh(v/2). Barut-Girardello
    coherent states take the lowering-operator eigenvalue ξ = |ξ| e^{iψ}
    directly.

    Attributes
    ----------
    kind : StateKind
        State family
    bargmann_a : float
        Bargmann index a in {1/2, 1, 3/2, ...}
    squeeze_v : float
        Hyperbolic angle v >= 0 (Perelomov only)
    xi_mag : float
        |ξ| >= 0 (Barut-Girardello only)
    xi_phase : float
        arg ξ in [0, 2π) (Barut-Girardello only)
    phase_phi : float
        Azimuth φ in [0, 2π) (Perelomov only)

    Examples
    --------
    ```
    from mzqfi.states import StateSpec

    pcs = StateSpec.perelomov(a=1, v=1.0)
    bgcs = StateSpec.barut_girardello(a=1, xi=1.0)
    bgcs_v1 = StateSpec.barut_girardello_from_v(a=1, v=1.0)  # |ξ| = tanh(1/2)
    ```
    """
    kind: StateKind
    bargmann_a: float = 1.0
    squeeze_v: float = 0.0
    xi_mag: float = 0.0
    xi_phase: float = 0.0
    phase_phi: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", StateKind(self.kind))

        two_a = 2.0 * self.bargmann_a
        if not math.isfinite(two_a) or abs(two_a - round(two_a)) > 1e-12 or round(two_a) < 1:
            raise ValueError(f"Bargmann index must be a positive half-integer, got {self.bargmann_a!r}")
        object.__setattr__(self, "bargmann_a", round(two_a) / 2.0)

        v_max = Conf().tolerance("v_max")
        if not math.isfinite(self.squeeze_v) or self.squeeze_v < 0:
            raise ValueError(f"squeeze_v must be >= 0, got {self.squeeze_v!r}")
        if self.squeeze_v > v_max:
            raise ValueError(f"squeeze_v must not exceed {v_max}, got {self.squeeze_v!r}")
        if not math.isfinite(self.xi_mag) or self.xi_mag < 0:
            raise ValueError(f"xi_mag must be >= 0, got {self.xi_mag!r}")
        for field in ("xi_phase", "phase_phi"):
            value = getattr(self, field)
            if not math.isfinite(value):
                raise ValueError(f"{field} must be finite, got {value!r}")
            object.__setattr__(self, field, value % _TWO_PI)

        if self.kind is StateKind.PERELOMOV and self.xi_mag:
            raise ValueError("Perelomov states are set through squeeze_v, not xi_mag")
        if self.kind is StateKind.BARUT_GIRARDELLO and self.squeeze_v:
            raise ValueError("Barut-Girardello states are set through xi_mag, not squeeze_v")

    @classmethod
    def perelomov(cls, a: float, v: float, phi: float = 0.0) -> "StateSpec":
        """Perelomov coherent state |ξ, a⟩ with ξ = e^{-iφ} tanh(v/2)."""
        return cls(StateKind.PERELOMOV, bargmann_a=a, squeeze_v=v, phase_phi=phi)

    @classmethod
    def barut_girardello(cls, a: float, xi: Union[float, complex], xi_phase: float = 0.0) -> "StateSpec":
        """
        Barut-Girardello coherent state with eigenvalue ξ.

        A complex ``xi`` sets both magnitude and phase; ``xi_phase`` is then ignored.
        """
        if isinstance(xi, complex):
            return cls(StateKind.BARUT_GIRARDELLO, bargmann_a=a, xi_mag=abs(xi), xi_phase=cmath.phase(xi))
        if xi < 0:
            raise ValueError(f"xi magnitude must be >= 0, got {xi!r}")
        return cls(StateKind.BARUT_GIRARDELLO, bargmann_a=a, xi_mag=float(xi), xi_phase=xi_phase)

    @classmethod
    def barut_girardello_from_v(cls, a: float, v: float, xi_phase: float = 0.0) -> "StateSpec":
        """Barut-Girardello state with |ξ| = tanh(v/2), the parametrization used to pair it with a PCS of the same v."""
        if not math.isfinite(v) or v < 0:
            raise ValueError(f"v must be >= 0, got {v!r}")
        return cls.barut_girardello(a, math.tanh(v / 2.0), xi_phase)

    @classmethod
    def vacuum(cls) -> "StateSpec":
        """The photon vacuum."""
        return cls(StateKind.VACUUM)

    @property
    def two_a(self) -> int:
        """2a as an integer; 2a - 1 is the Bessel order of the BGCS normalization."""
        return int(round(2.0 * self.bargmann_a))

    @property
    def xi(self) -> complex:
        """Coherent-state parameter ξ (0 for the vacuum)."""
        if self.kind is StateKind.PERELOMOV:
            return cmath.rect(math.tanh(self.squeeze_v / 2.0), -self.phase_phi)
        if self.kind is StateKind.BARUT_GIRARDELLO:
            return cmath.rect(self.xi_mag, self.xi_phase)
        return 0j

    @property
    def is_vacuum(self) -> bool:
        """True when the state is the photon vacuum, whatever its family."""
        return self.kind is StateKind.VACUUM or self.xi == 0

    @property
    def label(self) -> str:
        a = f"{self.bargmann_a:g}"
        if self.kind is StateKind.PERELOMOV:
            return f"pcs(a={a},v={self.squeeze_v:g})"
        if self.kind is StateKind.BARUT_GIRARDELLO:
            return f"bgcs(a={a},xi={self.xi_mag:.6g})"
        return "vacuum"
