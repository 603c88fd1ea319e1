"""
Sweep runners: QFI against transmission, sensitivity curves against θ,
PCS/BGCS performance ratios, and the closed-form versus oracle check.

Each runner applies the run's tolerance overrides for its duration and
returns a `SweepTable`; divergent or degenerate points are empty cells with
a ``status`` entry such as ``divergent:delta_dif``.
"""

import logging
import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple, TypeVar

from mzqfi.conf import Conf
from mzqfi.detection import Scheme, performance_ratio, sensitivity
from mzqfi.exceptions import (
    ConfigError,
    ConfigurationDegenerate,
    CutoffError,
    DegenerateInputError,
    DerivativeVanishes,
    OracleError,
)
from mzqfi.oracle import BeamSplitterPair, numeric_sensitivity, oracle_qfim
from mzqfi.qfi import InputMoments, Scenario, qcrb, qfi_closed_form, qfi_vacuum_port, snl
from mzqfi.states import StateKind, closed_form_stats
from mzqfi.sweep.config import Splitters, SweepConfig, SweepState
from mzqfi.sweep.grid import theta_values, transmission_values
from mzqfi.sweep.table import SweepTable, round_value

logger = logging.getLogger(__name__)

T = TypeVar("T")

_SCENARIOS = (Scenario.A, Scenario.B, Scenario.C)


@dataclass
class OracleReport:
    """Outcome of `run_oracle_check`: one row per compared quantity."""
    table: SweepTable
    passed: bool

    @property
    def failures(self) -> List[Dict]:
        return [row for row in self.table.rows if row["status"] == "fail"]


def _suffix(state: SweepState, config: SweepConfig) -> str:
    if len(config.states) == 1:
        return ""
    return "_" + re.sub(r"[^0-9A-Za-z]+", "_", state.name).strip("_").lower()


def _splitters_for(scheme: Scheme, config: SweepConfig) -> Splitters:
    return config.homodyne_splitters if scheme.is_homodyne else config.splitters


def _theta_points(config: SweepConfig) -> List[Tuple[float, FrozenSet[Scheme]]]:
    """
    θ rows of a curve, each with the schemes evaluated there.

    Intensity schemes run on ``theta_grid`` and homodyne schemes on
    ``homodyne_theta_grid``; points the two grids share become one row.
    """
    points: Dict[float, Tuple[float, set]] = {}
    for homodyne, grid in ((False, config.theta_grid), (True, config.homodyne_theta_grid)):
        schemes = {scheme for scheme in config.schemes if scheme.is_homodyne == homodyne}
        if not schemes:
            continue
        for theta in theta_values(grid, homodyne=homodyne):
            points.setdefault(round_value(theta), (theta, set()))[1].update(schemes)
    return [(theta, frozenset(schemes)) for _, (theta, schemes) in sorted(points.items())]


def _guarded(column: str, flags: List[str], compute: Callable[[], T]) -> Optional[T]:
    """Evaluate ``compute``, turning a divergence into an empty cell plus a flag."""
    try:
        return compute()
    except DerivativeVanishes:
        flags.append(f"divergent:{column}")
    except (ConfigurationDegenerate, DegenerateInputError):
        flags.append(f"degenerate:{column}")
    except (CutoffError, OracleError) as e:
        logger.warning(f"Skipped {column}: {e}")
        flags.append(f"skipped:{column}")
    return None


def _status(flags: List[str]) -> str:
    return ";".join(flags)


def run_qfi_sweep(config: SweepConfig) -> SweepTable:
    """
    H^(a), H^(b) and H^(c) against |α|² for every configured state.

    Oracle columns ``h_a_oracle``, ... are added when ``config.oracle`` is set.

    Examples
    --------
    ```
    config = SweepConfig.from_file("configs/qfi_transmission.json")
    table = run_qfi_sweep(config)
    table.column("h_b")[-1]  # 2 sinh²(1) for PCS(a=1, v=1)
    ```
    """
    columns = ["alpha_sq"]
    for state in config.states:
        suffix = _suffix(state, config)
        columns += [f"h_{s.value}{suffix}" for s in _SCENARIOS]
        if config.oracle:
            columns += [f"h_{s.value}_oracle{suffix}" for s in _SCENARIOS]
    columns.append("status")
    table = SweepTable(columns)

    with Conf().overridden(tolerances=config.tolerances):
        for x in transmission_values(config.transmission_grid):
            t = math.sqrt(x)
            row, flags = {"alpha_sq": x}, []
            for state in config.states:
                suffix = _suffix(state, config)
                for s in _SCENARIOS:
                    row[f"h_{s.value}{suffix}"] = qfi_closed_form(state.spec, t, s)
                if config.oracle:
                    column = f"h_oracle{suffix}"
                    result = _guarded(column, flags, lambda: oracle_qfim(state.spec, t, config.cutoff))
                    for s in _SCENARIOS:
                        row[f"h_{s.value}_oracle{suffix}"] = result.h(s) if result is not None else None
            row["status"] = _status(flags)
            table.add_row(row)
    logger.info(f"QFI sweep: {len(table.rows)} rows for {len(config.states)} state(s)")
    return table


def _qcrb_constants(state: SweepState, config: SweepConfig) -> Dict[Scenario, Optional[float]]:
    t_a = config.splitters.t1
    t_hom = config.homodyne_splitters.t1
    return {
        Scenario.A: qcrb(qfi_closed_form(state.spec, t_a, Scenario.A)),
        Scenario.B: qcrb(qfi_closed_form(state.spec, t_hom, Scenario.B)),
        Scenario.C: qcrb(qfi_closed_form(state.spec, t_hom, Scenario.C)),
    }


def run_sensitivity_curve(config: SweepConfig) -> SweepTable:
    """
    Δθ per scheme against θ, with the three QCRB constants and the SNL.

    Intensity schemes use ``config.splitters`` and ``config.theta_grid``,
    homodyne schemes ``config.homodyne_splitters`` and
    ``config.homodyne_theta_grid``; a scheme has empty cells on rows outside
    its grid. A finite Δθ below its bound is kept,
    flagged ``below_qcrb`` and logged as a warning.
    """
    columns = ["theta"]
    for state in config.states:
        suffix = _suffix(state, config)
        columns += [f"delta_{scheme.short_name}{suffix}" for scheme in config.schemes]
        columns += [f"qcrb_{s.value}{suffix}" for s in _SCENARIOS]
        columns.append(f"snl{suffix}")
        if config.oracle:
            columns += [f"delta_{scheme.short_name}_oracle{suffix}" for scheme in config.schemes]
    columns.append("status")
    table = SweepTable(columns)

    with Conf().overridden(tolerances=config.tolerances):
        slack = Conf().tolerance("qcrb_slack")
        constants = {state.name: _qcrb_constants(state, config) for state in config.states}
        for theta, active in _theta_points(config):
            row, flags = {"theta": theta}, []
            for state in config.states:
                suffix = _suffix(state, config)
                for s in _SCENARIOS:
                    row[f"qcrb_{s.value}{suffix}"] = constants[state.name][s]
                row[f"snl{suffix}"] = _guarded(
                    f"snl{suffix}", flags, lambda: snl(closed_form_stats(state.spec).mean)
                )
                for scheme in config.schemes:
                    column = f"delta_{scheme.short_name}{suffix}"
                    if scheme not in active:
                        continue
                    split = _splitters_for(scheme, config)
                    point = _guarded(column, flags, lambda: sensitivity(scheme, state.spec, split.t1, split.t2, theta))
                    row[column] = point.delta_theta if point is not None else None
                    if point is not None and not point.within_bound(slack):
                        logger.warning(
                            f"{column} = {point.delta_theta:.9g} lies below its bound {point.qcrb_ref:.9g} at θ = {theta:.6g}"
                        )
                        flags.append(f"below_qcrb:{column}")
                    if config.oracle:
                        oracle_column = f"delta_{scheme.short_name}_oracle{suffix}"
                        row[oracle_column] = _guarded(
                            oracle_column,
                            flags,
                            lambda: numeric_sensitivity(
                                state.spec, BeamSplitterPair(split.t1, split.t2), scheme, theta, cutoff=config.cutoff
                            ),
                        )
            row["status"] = _status(flags)
            table.add_row(row)
    logger.info(f"Sensitivity curve: {len(table.rows)} rows, schemes {[s.value for s in config.schemes]}")
    return table


def run_ratio_sweep(config: SweepConfig) -> SweepTable:
    """
    Performance ratio R = Δθ(first state) / Δθ(second state) per scheme against θ.

    Raises
    ------
    ConfigError
        If the configuration does not name exactly two states
    """
    if len(config.states) != 2:
        raise ConfigError("states", f"ratio sweeps need exactly two states, got {len(config.states)}")
    first, second = config.states
    pcs_vs_bgcs = first.spec.kind is StateKind.PERELOMOV and second.spec.kind is StateKind.BARUT_GIRARDELLO
    columns = ["theta"] + [f"ratio_{scheme.short_name}" for scheme in config.schemes] + ["status"]
    table = SweepTable(columns)

    with Conf().overridden(tolerances=config.tolerances):
        for theta, active in _theta_points(config):
            row, flags = {"theta": theta}, []
            for scheme in config.schemes:
                column = f"ratio_{scheme.short_name}"
                if scheme not in active:
                    continue
                split = _splitters_for(scheme, config)
                ratio = _guarded(
                    column, flags, lambda: performance_ratio(first.spec, second.spec, scheme, split.t1, split.t2, theta)
                )
                row[column] = ratio
                if pcs_vs_bgcs and ratio is not None and ratio >= 1.0:
                    logger.warning(f"{column} = {ratio:.9g} >= 1 at θ = {theta:.6g}: no advantage for {first.name}")
            row["status"] = _status(flags)
            table.add_row(row)

    if Scheme.INTENSITY_DIFFERENCE in config.schemes and Scheme.SINGLE_MODE in config.schemes:
        gaps = [
            abs(row["ratio_dif"] - row["ratio_sing"])
            for row in table.rows
            if row["ratio_dif"] is not None and row["ratio_sing"] is not None
        ]
        if gaps:
            logger.info(f"Largest |R_dif - R_sing| over the grid: {max(gaps):.3g}")
    return table


def _relative_deviation(closed: float, oracle: float) -> float:
    scale = max(abs(closed), abs(oracle))
    return abs(closed - oracle) / scale if scale > 0 else 0.0


def _compare(
    table: SweepTable,
    quantity: str,
    state: SweepState,
    alpha_sq: Optional[float],
    theta: Optional[float],
    closed: Optional[float],
    oracle: Optional[float],
    tolerance: float,
) -> None:
    row = {
        "quantity": quantity, "state": state.name, "alpha_sq": alpha_sq, "theta": theta,
        "closed_form": closed, "oracle": oracle, "tolerance": tolerance,
    }
    if state.spec.is_vacuum:
        row["status"] = "trivial"
    elif closed is None and oracle is None:
        row["status"] = "divergent"
    elif closed is None or oracle is None:
        row["status"] = "fail"
    else:
        deviation = _relative_deviation(closed, oracle)
        row["rel_deviation"] = deviation
        row["status"] = "pass" if deviation <= tolerance else "fail"
    if row["status"] == "fail":
        logger.warning(f"Oracle mismatch for {quantity} of {state.name}: closed form {closed!r}, oracle {oracle!r}")
    table.add_row(row)


def _closed_sensitivity(scheme: Scheme, state: SweepState, split: Splitters, theta: float) -> Optional[float]:
    try:
        return sensitivity(scheme, state.spec, split.t1, split.t2, theta).delta_theta
    except (DerivativeVanishes, ConfigurationDegenerate):
        return None


def _oracle_sensitivity(
    scheme: Scheme, state: SweepState, split: Splitters, theta: float, cutoff: Optional[int]
) -> Optional[float]:
    try:
        return numeric_sensitivity(state.spec, BeamSplitterPair(split.t1, split.t2), scheme, theta, cutoff=cutoff)
    except DerivativeVanishes:
        return None


def run_oracle_check(config: SweepConfig) -> OracleReport:
    """
    Compare every closed form with the truncated-Fock oracle.

    QFIs are checked against ``qfi_oracle_rel`` and sensitivities against
    ``sensitivity_oracle_rel``. The gap H^(c) - H_dd between the tabulated
    and the exact symmetric-scenario QFI is reported without a verdict.
    Points whose cutoff cannot be certified are logged and marked
    ``skipped``. Vacuum states pass trivially.

    Returns
    -------
    OracleReport
        ``passed`` is False if any row failed
    """
    columns = [
        "quantity", "state", "alpha_sq", "theta", "closed_form", "oracle", "rel_deviation", "tolerance", "status",
    ]
    table = SweepTable(columns)

    with Conf().overridden(tolerances=config.tolerances):
        conf = Conf()
        qfi_tol = conf.tolerance("qfi_oracle_rel")
        sens_tol = conf.tolerance("sensitivity_oracle_rel")
        for state in config.states:
            for x in config.oracle_grid.transmissions:
                t = math.sqrt(x)
                try:
                    result = oracle_qfim(state.spec, t, config.cutoff)
                except (CutoffError, OracleError) as e:
                    logger.warning(f"Skipped oracle QFIM of {state.name} at |α|² = {x:g}: {e}")
                    table.add_row({"quantity": "qfim", "state": state.name, "alpha_sq": x, "status": "skipped"})
                    continue
                for s in _SCENARIOS:
                    _compare(table, f"h_{s.value}", state, x, None, qfi_closed_form(state.spec, t, s), result.h(s), qfi_tol)
                exact = qfi_vacuum_port(InputMoments.from_spec(state.spec), t)
                table.add_row({
                    "quantity": "h_c_gap", "state": state.name, "alpha_sq": x,
                    "closed_form": exact.h_c - exact.h_dd, "oracle": result.h_c - result.h_dd,
                    "status": "reported",
                })

            for scheme in config.schemes:
                split = _splitters_for(scheme, config)
                for theta_pi in config.oracle_grid.thetas_pi:
                    theta = theta_pi * math.pi
                    try:
                        closed = _closed_sensitivity(scheme, state, split, theta)
                        oracle = _oracle_sensitivity(scheme, state, split, theta, config.cutoff)
                    except (CutoffError, OracleError) as e:
                        logger.warning(f"Skipped {scheme.value} of {state.name} at θ = {theta:.6g}: {e}")
                        table.add_row({
                            "quantity": f"delta_{scheme.short_name}", "state": state.name,
                            "theta": theta, "status": "skipped",
                        })
                        continue
                    _compare(table, f"delta_{scheme.short_name}", state, None, theta, closed, oracle, sens_tol)

    report = OracleReport(table, passed=not any(row["status"] == "fail" for row in table.rows))
    counts: Dict[str, int] = {}
    for row in table.rows:
        counts[row["status"]] = counts.get(row["status"], 0) + 1
    logger.info(f"Oracle check: {counts}")
    return report


def summarize(report: OracleReport) -> List[Tuple[str, float]]:
    """Largest relative deviation per quantity among compared rows."""
    worst: Dict[str, float] = {}
    for row in report.table.rows:
        deviation = row["rel_deviation"]
        if deviation is not None:
            worst[row["quantity"]] = max(worst.get(row["quantity"], 0.0), deviation)
    return sorted(worst.items())
