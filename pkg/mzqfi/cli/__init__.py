#!/usr/bin/env python3
"""
mzqfi Command Line Interface

This module provides a command-line interface for the mzqfi sweeps.

Available Commands:
    qfi-sweep          H^(a), H^(b), H^(c) against |α|² (CSV, optional SVG).
    sensitivity-curve  Δθ per detection scheme against θ with the QCRB constants.
    ratio-sweep        Performance ratio of two input states against θ.
    oracle-check       Compare every closed form with the truncated-Fock oracle.
    plot               Render columns of a sweep CSV as SVG.
    info               Show version, dependency versions and effective tolerances.

Exit codes: 0 success, 1 invalid configuration or input, 2 oracle tolerance
violation.

Examples:

    # Reproduce the QFI curves and draw them
    mzqfi qfi-sweep --config configs/qfi_transmission.json --svg out/qfi.svg

    # Sensitivity curves with oracle columns
    mzqfi sensitivity-curve -c configs/sensitivity_v1.json --oracle

    # Cross-check closed forms, failing with exit code 2 on a mismatch
    mzqfi oracle-check -c configs/oracle_check.json -o out/oracle.csv

    # Plot two columns on a log axis
    mzqfi plot --csv out/sensitivity.csv --out out/sensitivity.svg --columns delta_dif,qcrb_a --log-y

"""
import dataclasses
import logging
import sys
from pathlib import Path
from typing import Callable, Optional

import typer

from mzqfi.conf import Conf
from mzqfi.exceptions import MzqfiError
from mzqfi.sweep import (
    SweepConfig,
    SweepTable,
    render_plot,
    run_oracle_check,
    run_qfi_sweep,
    run_ratio_sweep,
    run_sensitivity_curve,
    summarize,
    write_table,
)

_cli_app = typer.Typer(
    help="mzqfi CLI - QFI, QCRB and phase-sensitivity sweeps for SU(1,1) coherent states in a Mach-Zehnder interferometer",
    no_args_is_help=True,
    add_completion=False
)

_LOG_LEVELS = ("debug", "info", "warning", "error", "critical")


def _configure_logging(log_level: str) -> None:
    level = log_level.lower()
    if level not in _LOG_LEVELS:
        print(f"❌ Unknown log level '{log_level}' (choose from {', '.join(_LOG_LEVELS)})")
        raise typer.Exit(1)
    logging.basicConfig(level=level.upper(), format="%(levelname)s %(name)s: %(message)s")


def _load(config_path: Path, oracle: Optional[bool], cutoff: Optional[int]) -> SweepConfig:
    try:
        config = SweepConfig.from_file(config_path)
    except MzqfiError as e:
        print(f"❌ Invalid configuration: {e}")
        raise typer.Exit(1)
    changes = {}
    if oracle is not None:
        changes["oracle"] = oracle
    if cutoff is not None:
        if cutoff < 1:
            print(f"❌ --cutoff must be positive, got {cutoff}")
            raise typer.Exit(1)
        changes["cutoff"] = cutoff
    return dataclasses.replace(config, **changes) if changes else config


def _sweep(
    runner: Callable[[SweepConfig], SweepTable],
    config_path: Path,
    out: Optional[Path],
    svg: Optional[Path],
    oracle: Optional[bool],
    cutoff: Optional[int],
    log_level: str,
    log_y: bool,
) -> None:
    _configure_logging(log_level)
    config = _load(config_path, oracle, cutoff)
    csv_path = out or config.output.csv
    if csv_path is None:
        print("❌ No CSV path: pass --out or set output.csv in the configuration")
        raise typer.Exit(1)
    try:
        table = runner(config)
        write_table(table, csv_path)
        print(f"✅ {len(table.rows)} rows written to {csv_path}")
        svg_path = svg or config.output.svg
        if svg_path is not None:
            render_plot(csv_path, svg_path, log_y=log_y)
            print(f"✅ Plot written to {svg_path}")
    except MzqfiError as e:
        print(f"❌ {e}")
        raise typer.Exit(1)


_CONFIG = typer.Option(..., "--config", "-c", help="Run configuration (JSON)")
_OUT = typer.Option(None, "--out", "-o", help="CSV output path (overrides output.csv)")
_SVG = typer.Option(None, "--svg", help="Also render the CSV as SVG at this path")
_ORACLE = typer.Option(None, "--oracle/--no-oracle", help="Add truncated-Fock oracle columns")
_CUTOFF = typer.Option(None, "--cutoff", help="Fixed oracle Fock cutoff")
_LOG_LEVEL = typer.Option("warning", "--log-level", "-l", help="Log level (debug, info, warning, error, critical)")


@_cli_app.command("qfi-sweep")
def qfi_sweep(
    config: Path = _CONFIG,
    out: Optional[Path] = _OUT,
    svg: Optional[Path] = _SVG,
    oracle: Optional[bool] = _ORACLE,
    cutoff: Optional[int] = _CUTOFF,
    log_level: str = _LOG_LEVEL,
):
    """
    Sweep H^(a), H^(b) and H^(c) over the transmission grid |α|².
    """
    _sweep(run_qfi_sweep, config, out, svg, oracle, cutoff, log_level, log_y=False)


@_cli_app.command("sensitivity-curve")
def sensitivity_curve(
    config: Path = _CONFIG,
    out: Optional[Path] = _OUT,
    svg: Optional[Path] = _SVG,
    oracle: Optional[bool] = _ORACLE,
    cutoff: Optional[int] = _CUTOFF,
    log_level: str = _LOG_LEVEL,
):
    """
    Sweep Δθ of every configured detection scheme over the θ grid.

    Divergent points are left empty and named in the status column.
    """
    _sweep(run_sensitivity_curve, config, out, svg, oracle, cutoff, log_level, log_y=True)


@_cli_app.command("ratio-sweep")
def ratio_sweep(
    config: Path = _CONFIG,
    out: Optional[Path] = _OUT,
    svg: Optional[Path] = _SVG,
    oracle: Optional[bool] = _ORACLE,
    cutoff: Optional[int] = _CUTOFF,
    log_level: str = _LOG_LEVEL,
):
    """
    Sweep R = Δθ(first state)/Δθ(second state) over the θ grid.
    """
    _sweep(run_ratio_sweep, config, out, svg, oracle, cutoff, log_level, log_y=False)


@_cli_app.command("oracle-check")
def oracle_check(
    config: Path = _CONFIG,
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Report CSV path (overrides output.report)"),
    cutoff: Optional[int] = _CUTOFF,
    log_level: str = _LOG_LEVEL,
):
    """
    Compare closed-form QFIs and sensitivities with the truncated-Fock oracle.

    Exits with code 2 if any deviation exceeds its tolerance.
    """
    _configure_logging(log_level)
    run_config = _load(config, None, cutoff)
    try:
        report = run_oracle_check(run_config)
    except MzqfiError as e:
        print(f"❌ {e}")
        raise typer.Exit(1)
    report_path = out or run_config.output.report or run_config.output.csv
    if report_path is not None:
        write_table(report.table, report_path)
        print(f"📄 Report written to {report_path}")
    for quantity, deviation in summarize(report):
        print(f"  {quantity:<14} max relative deviation {deviation:.3e}")
    if not report.passed:
        print(f"❌ {len(report.failures)} comparison(s) exceed their tolerance")
        raise typer.Exit(2)
    print("✅ Closed forms agree with the oracle")


@_cli_app.command()
def plot(
    csv: Path = typer.Option(..., "--csv", help="Sweep CSV to render"),
    out: Path = typer.Option(..., "--out", "-o", help="SVG output path"),
    x: Optional[str] = typer.Option(None, "--x", help="Abscissa column (default: first column)"),
    columns: Optional[str] = typer.Option(None, "--columns", help="Comma-separated columns to draw"),
    log_y: bool = typer.Option(False, "--log-y", help="Logarithmic ordinate"),
    title: Optional[str] = typer.Option(None, "--title", help="Axes title"),
    log_level: str = _LOG_LEVEL,
):
    """
    Render columns of a sweep CSV as a deterministic SVG.
    """
    _configure_logging(log_level)
    selected = [c.strip() for c in columns.split(",") if c.strip()] if columns else None
    try:
        render_plot(csv, out, x=x, columns=selected, log_y=log_y, title=title)
    except MzqfiError as e:
        print(f"❌ {e}")
        raise typer.Exit(1)
    print(f"✅ Plot written to {out}")


@_cli_app.command()
def info():
    """
    Show version, dependency versions and effective tolerances.
    """
    import matplotlib
    import numpy
    import scipy
    import yaml

    import mzqfi

    print("📋 mzqfi Information")
    print("=" * 50)
    print(f"Version: {getattr(mzqfi, '__version__', 'unknown')}")
    print(f"Python: {sys.version.split()[0]}")
    print(f"Platform: {sys.platform}")

    print("\n📦 Dependencies:")
    for module in (numpy, scipy, matplotlib, typer, yaml):
        print(f"  {module.__name__:<12} {getattr(module, '__version__', 'unknown')}")

    print("\n📐 Tolerances:")
    for name, value in sorted(Conf()["tolerances"].items()):
        print(f"  {name:<24} {value:g}")

    print("\n🔗 Available commands:")
    print("  qfi-sweep          - QFI against transmission")
    print("  sensitivity-curve  - Δθ against θ")
    print("  ratio-sweep        - performance ratio against θ")
    print("  oracle-check       - closed form vs oracle")
    print("  plot               - CSV to SVG")
    print("  info               - Show detailed information")


# Export cli_app as alias for _cli_app for external imports
cli_app = _cli_app

if __name__ == "__main__":
    _cli_app()
