"""
Flat CSV tables for sweep results.

Numbers are stored rounded to ``Conf()["csv"]["significant_digits"]``
significant digits, so a table written and read back compares equal to the
one in memory. Undefined values (divergent or degenerate points) are empty
cells, never ``inf``; the ``status`` column says why.
"""

import csv
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Union

from mzqfi.conf import Conf

logger = logging.getLogger(__name__)

Cell = Union[float, str, None]

TEXT_COLUMNS = frozenset({"status", "quantity", "state"})


def _digits() -> int:
    return int(Conf()["csv"]["significant_digits"])


def round_value(value: Optional[float]) -> Optional[float]:
    """Round to the CSV precision; non-finite values become ``None``."""
    if value is None or not math.isfinite(value):
        return None
    return float(f"{value:.{_digits()}g}")


@dataclass
class SweepTable:
    """
    Ordered rows over a fixed list of columns.

    Attributes
    ----------
    columns : list of str
        Header, in output order
    rows : list of dict
        Cells keyed by column; text columns hold ``str``, the others a
        rounded ``float`` or ``None``
    """
    columns: List[str]
    rows: List[Dict[str, Cell]] = field(default_factory=list)

    def add_row(self, values: Dict[str, Cell]) -> None:
        unknown = set(values) - set(self.columns)
        if unknown:
            raise KeyError(f"Columns {sorted(unknown)} are not in the table")
        row: Dict[str, Cell] = {}
        for column in self.columns:
            value = values.get(column)
            if column in TEXT_COLUMNS:
                row[column] = "" if value is None else str(value)
            else:
                row[column] = round_value(value)
        self.rows.append(row)

    def column(self, name: str) -> List[Optional[float]]:
        if name not in self.columns:
            raise KeyError(f"Unknown column '{name}'")
        return [row[name] for row in self.rows]


def _format(value: Cell) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.{_digits()}g}"


def write_table(table: SweepTable, path: Union[str, Path]) -> Path:
    """Write ``table`` as UTF-8 CSV with ``\\n`` line endings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=table.columns, lineterminator="\n")
        writer.writeheader()
        for row in table.rows:
            writer.writerow({column: _format(row[column]) for column in table.columns})
    logger.info(f"Wrote {len(table.rows)} rows to {path}")
    return path


def read_table(path: Union[str, Path]) -> SweepTable:
    """
    Read a CSV written by `write_table`.

    Raises
    ------
    ValueError
        If the file has no header or a numeric cell does not parse
    """
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if not reader.fieldnames:
            raise ValueError(f"{path} has no header row")
        table = SweepTable(list(reader.fieldnames))
        for line, raw in enumerate(reader, start=2):
            row: Dict[str, Cell] = {}
            for column in table.columns:
                text = raw.get(column) or ""
                if column in TEXT_COLUMNS:
                    row[column] = text
                elif text == "":
                    row[column] = None
                else:
                    try:
                        row[column] = float(text)
                    except ValueError:
                        raise ValueError(f"{path}:{line}: column '{column}' holds {text!r}, not a number")
            table.rows.append(row)
    return table
