"""
SU(1,1) coherent input states: declarative specs, certified Fock truncation,
Fock amplitudes and closed-form photon statistics.
"""

from .cutoff import auto_cutoff, log_probability, tail_bound
from .state_spec import StateKind, StateSpec
from .su11 import (
    FockAmplitudes,
    PhotonStatistics,
    bgcs_amplitudes,
    casimir_on_basis,
    closed_form_stats,
    lowering_apply,
    pcs_amplitudes,
    state_amplitudes,
)

__all__ = [
    "StateKind",
    "StateSpec",
    "FockAmplitudes",
    "PhotonStatistics",
    "pcs_amplitudes",
    "bgcs_amplitudes",
    "state_amplitudes",
    "lowering_apply",
    "closed_form_stats",
    "casimir_on_basis",
    "auto_cutoff",
    "tail_bound",
    "log_probability",
]
