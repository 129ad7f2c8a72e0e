"""
Table rendering for the command line.

Every command produces named tables. CSV output writes them one after the
other below ``# `` provenance lines; JSON wraps them as
``{"provenance": {...}, "result": {table: [row, ...]}}``. Nothing time- or
host-dependent is written, so identical invocations give identical bytes.
"""

import io
import csv
import sys
import json
import math
from enum import StrEnum
from pathlib import Path

from pydantic import Field

from cltscope_core.types import FrozenModel

Cell = int | float | str | None


class OutputFormat(StrEnum):
    CSV = "csv"
    JSON = "json"


class OutputSpec(FrozenModel):
    format: OutputFormat = OutputFormat.CSV
    path: str | None = None
    precision: int = Field(default=6, ge=1, le=17)


class Table(FrozenModel):
    name: str
    columns: tuple[str, ...] = Field(min_length=1)
    rows: tuple[tuple[Cell, ...], ...]
    description: str | None = None
    plot: bool = False


class Provenance(FrozenModel):
    subcommand: str
    flags: dict[str, str]
    seed: int | None = None
    version: str


def format_cell(value: Cell, precision: int) -> str:
    """Floats to ``precision`` significant digits; integers stay exact; missing is empty."""
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, int):
        return str(value)
    if math.isnan(value):
        return "nan"
    return f"{value:.{precision}g}"


def _json_cell(value: Cell, precision: int) -> Cell:
    if value is None or isinstance(value, (int, str)):
        return value
    if not math.isfinite(value):
        return None
    return float(f"{value:.{precision}g}")


def render_csv(tables: list[Table], provenance: Provenance, precision: int) -> str:
    buf = io.StringIO()
    buf.write(f"# subcommand={provenance.subcommand}\n")
    for key, value in sorted(provenance.flags.items()):
        buf.write(f"# {key}={value}\n")
    if provenance.seed is not None:
        buf.write(f"# seed={provenance.seed}\n")
    buf.write(f"# version={provenance.version}\n")

    writer = csv.writer(buf, lineterminator="\n")
    for index, table in enumerate(tables):
        if index:
            buf.write("\n")
        buf.write(f"# table={table.name}\n")
        if table.description:
            buf.write(f"# {table.description}\n")
        writer.writerow(table.columns)
        writer.writerows([format_cell(cell, precision) for cell in row] for row in table.rows)
    return buf.getvalue()


def render_json(tables: list[Table], provenance: Provenance, precision: int) -> str:
    result = {
        table.name: [
            {column: _json_cell(cell, precision) for column, cell in zip(table.columns, row)}
            for row in table.rows
        ]
        for table in tables
    }
    document = {"provenance": provenance.model_dump(), "result": result}
    return json.dumps(document, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def render(tables: list[Table], provenance: Provenance, spec: OutputSpec) -> str:
    if spec.format is OutputFormat.JSON:
        return render_json(tables, provenance, spec.precision)
    return render_csv(tables, provenance, spec.precision)


def emit(text: str, path: str | Path | None = None) -> None:
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    Path(path).write_text(text, encoding="utf-8")
