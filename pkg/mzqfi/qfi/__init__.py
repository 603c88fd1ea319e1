"""
Quantum Fisher information, Cramér-Rao bounds, optimal transmission and the
shot-noise limit for the Mach-Zehnder phase estimation problem.
"""

from .moments import InputMoments
from .qfim import (
    OptimalTransmission,
    QfimResult,
    Scenario,
    h_b_polynomial,
    optimal_transmission_b,
    qcrb,
    qfi_closed_form,
    qfi_vacuum_port,
    qfim_general,
    snl,
    true_symmetric_qfi,
)

__all__ = [
    "InputMoments",
    "QfimResult",
    "Scenario",
    "OptimalTransmission",
    "qcrb",
    "qfim_general",
    "qfi_vacuum_port",
    "qfi_closed_form",
    "h_b_polynomial",
    "optimal_transmission_b",
    "snl",
    "true_symmetric_qfi",
]
