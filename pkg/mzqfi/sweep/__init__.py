"""
Run configurations, parameter sweeps, the oracle consistency check and the
CSV/SVG artifacts they produce.
"""

from .config import (
    BgcsParametrization,
    LinearGrid,
    OracleGrid,
    OutputPaths,
    Splitters,
    SweepConfig,
    SweepState,
)
from .grid import theta_values, transmission_values
from .plot import default_columns, render_plot
from .runs import (
    OracleReport,
    run_oracle_check,
    run_qfi_sweep,
    run_ratio_sweep,
    run_sensitivity_curve,
    summarize,
)
from .table import SweepTable, read_table, round_value, write_table

__all__ = [
    "BgcsParametrization",
    "LinearGrid",
    "OracleGrid",
    "OutputPaths",
    "Splitters",
    "SweepConfig",
    "SweepState",
    "theta_values",
    "transmission_values",
    "SweepTable",
    "read_table",
    "write_table",
    "round_value",
    "OracleReport",
    "run_qfi_sweep",
    "run_sensitivity_curve",
    "run_ratio_sweep",
    "run_oracle_check",
    "summarize",
    "render_plot",
    "default_columns",
]
