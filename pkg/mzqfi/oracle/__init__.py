"""
Truncated-Fock simulator of the interferometer: two-mode grids, exact
beam-splitter and phase unitaries, operator moments, and the brute-force
QFIM and sensitivities used to cross-check the closed forms.
"""

from .fock_oracle import generator_covariance, numeric_sensitivity, oracle_qfim, propagate
from .two_mode import (
    BeamSplitterPair,
    PhaseConfig,
    PhaseScenario,
    TwoModeState,
    apply_beam_splitter,
    apply_phases,
    build_input,
    moments,
    oracle_cutoff,
)

__all__ = [
    "BeamSplitterPair",
    "PhaseConfig",
    "PhaseScenario",
    "TwoModeState",
    "build_input",
    "oracle_cutoff",
    "apply_beam_splitter",
    "apply_phases",
    "moments",
    "propagate",
    "generator_covariance",
    "oracle_qfim",
    "numeric_sensitivity",
]
