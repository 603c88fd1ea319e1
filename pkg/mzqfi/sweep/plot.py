import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from mzqfi.conf import Conf  # noqa: E402
from mzqfi.exceptions import PlotError  # noqa: E402
from mzqfi.sweep.table import TEXT_COLUMNS, read_table  # noqa: E402

logger = logging.getLogger(__name__)

PLOTTED_PREFIXES = ("h_", "delta_", "qcrb_", "ratio_")


def default_columns(columns: Sequence[str], x: str) -> List[str]:
    """Figure quantities of a sweep table: QFIs, sensitivities, bounds and ratios."""
    return [c for c in columns if c != x and c not in TEXT_COLUMNS and c.startswith(PLOTTED_PREFIXES)]


def render_plot(
    csv_path: Union[str, Path],
    out_path: Union[str, Path],
    x: Optional[str] = None,
    columns: Optional[Sequence[str]] = None,
    log_y: bool = False,
    title: Optional[str] = None,
) -> Path:
    """
    Render columns of a sweep CSV as a static SVG.

    The output is byte-reproducible: the SVG id salt is fixed, text is
    drawn as paths and no date is embedded. Each column becomes one curve
    grouped under ``gid="curve-<column>"``; a curve joins only the rows where
    its column has a value, so schemes sampled on different θ grids share one
    table.

    Parameters
    ----------
    csv_path : str or Path
        Table written by `write_table`
    out_path : str or Path
        SVG file to write
    x : str, optional
        Abscissa column; defaults to the first column
    columns : sequence of str, optional
        Columns to draw; defaults to `default_columns`
    log_y : bool
        Logarithmic ordinate, for Δθ curves
    title : str, optional
        Axes title

    Returns
    -------
    Path
        ``out_path``

    Raises
    ------
    PlotError
        If the CSV cannot be read, has no rows, or lacks a requested column.
        Nothing is written in that case.
    """
    try:
        table = read_table(csv_path)
    except (OSError, ValueError) as e:
        raise PlotError(f"Cannot read {csv_path}: {e}")
    if not table.rows:
        raise PlotError(f"{csv_path} has no data rows")
    x = x or table.columns[0]
    selected = list(columns) if columns else default_columns(table.columns, x)
    missing = [c for c in [x, *selected] if c not in table.columns]
    if missing:
        raise PlotError(f"{csv_path} has no column(s) {missing}; available: {table.columns}")
    if not selected:
        raise PlotError(f"Nothing to plot in {csv_path}")
    if any(c in TEXT_COLUMNS for c in [x, *selected]):
        raise PlotError("Text columns cannot be plotted")

    def _values(name: str) -> np.ndarray:
        return np.array([np.nan if v is None else v for v in table.column(name)], dtype=float)

    conf = Conf()["plot"]
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context({"svg.hashsalt": str(conf["hashsalt"]), "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(conf["width_inches"], conf["height_inches"]))
        try:
            xs = _values(x)
            for name in selected:
                ys = _values(name)
                if log_y:
                    ys[ys <= 0] = np.nan
                present = ~(np.isnan(xs) | np.isnan(ys))
                ax.plot(xs[present], ys[present], label=name, gid=f"curve-{name}")
            ax.set_xlabel(x)
            if log_y:
                ax.set_yscale("log")
            if title:
                ax.set_title(title)
            ax.legend(loc="best")
            fig.savefig(out_path, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    logger.info(f"Wrote {len(selected)} curve(s) to {out_path}")
    return out_path
