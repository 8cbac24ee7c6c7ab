"""
Result files.

CSV tables and the JSON manifest are written to a temporary file in the
target directory and renamed into place. A writer remembers what it wrote
so a failed run can remove its partial outputs.
"""

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from ..exceptions import OutputError
from ..logging_config import get_logger

logger = get_logger(__name__)


@dataclass
class Table:
    """One CSV file: column headers (with units) and rows of values."""
    name: str
    columns: Sequence[str]
    rows: list[Sequence[Any]] = field(default_factory=list)

    def add(self, *values: Any) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"{self.name}: expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(values)

    @property
    def filename(self) -> str:
        return f"{self.name}.csv"


def format_value(value: Any) -> str:
    """Locale-free text for one CSV cell; floats use the shortest round-trip form."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def render_csv(table: Table) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow(format_value(v) for v in row)
    return buffer.getvalue()


class OutputWriter:
    """Atomic writer for one run's output directory."""

    def __init__(self, out_dir: str | Path):
        self.out_dir = Path(out_dir)
        self.written: list[Path] = []

    def _write_text(self, filename: str, text: str) -> Path:
        target = self.out_dir / filename
        try:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(prefix=f".{filename}.", dir=self.out_dir)
            try:
                with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
                    f.write(text)
                os.replace(tmp, target)
            except BaseException:
                Path(tmp).unlink(missing_ok=True)
                raise
        except OSError as e:
            raise OutputError(str(target), str(e)) from e
        self.written.append(target)
        logger.debug("Wrote output file", extra={"path": str(target), "bytes": len(text)})
        return target

    def write_table(self, table: Table) -> Path:
        return self._write_text(table.filename, render_csv(table))

    def write_tables(self, tables: Iterable[Table]) -> list[Path]:
        return [self.write_table(t) for t in tables]

    def write_json(self, filename: str, payload: dict) -> Path:
        return self._write_text(filename, json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")

    def write_script(self, filename: str, text: str) -> Path:
        return self._write_text(filename, text)

    def remove_partial(self) -> None:
        """Delete every file this writer created."""
        for path in self.written:
            try:
                path.unlink(missing_ok=True)
            except OSError as e:
                logger.warning("Could not remove partial output", extra={"path": str(path), "error": str(e)})
        logger.info("Removed partial outputs", extra={"count": len(self.written)})
        self.written.clear()


def gnuplot_script(table: Table, x: str, ys: Sequence[str], group: str | None = None, logscale_y: bool = False) -> str:
    """
    Minimal gnuplot script plotting columns ys against x from a table's CSV.

    With group set, one curve per distinct value of that column is drawn
    via gnuplot's column filtering.
    """
    cols = {name: i + 1 for i, name in enumerate(table.columns)}
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        f"set xlabel '{x}'",
    ]
    if logscale_y:
        lines.append("set logscale y")
    plots = []
    if group is None:
        for y in ys:
            plots.append(f"'{table.filename}' using {cols[x]}:{cols[y]} with linespoints title '{y}'")
    else:
        values = sorted({str(row[cols[group] - 1]) for row in table.rows})
        for value in values:
            for y in ys:
                plots.append(
                    f"'{table.filename}' using {cols[x]}:(strcol({cols[group]}) eq '{value}' ? ${cols[y]} : 1/0) "
                    f"with linespoints title '{value} {y}'"
                )
    lines.append("plot " + ", \\\n     ".join(plots))
    return "\n".join(lines) + "\n"
