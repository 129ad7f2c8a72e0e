import csv
import math
from enum import StrEnum
from typing import Self
from pathlib import Path

import numpy as np
from scipy.integrate import trapezoid
from numpy.typing import ArrayLike
from pydantic import Field, FiniteFloat, model_validator

from cltscope_core.types import FrozenModel
from cltscope_core.errors import ParseError

from ..special_fns import FloatArray, std_normal_cdf, std_normal_pdf

DEFAULT_POINTS = 4097
DEFAULT_HALF_WIDTH = 8.0
PDF_MASS_RANGE = (0.98, 1.02)
MONOTONE_SLACK = 1e-12


class GridKind(StrEnum):
    CDF = "cdf"
    PDF = "pdf"


class GridFunction(FrozenModel):
    """
    A CDF or PDF tabulated on an increasing grid.

    A CDF may repeat an abscissa once to carry a jump: the first entry is the
    left limit, the second the value. PDF grids are strictly increasing.
    """

    grid: tuple[FiniteFloat, ...] = Field(min_length=2)
    values: tuple[FiniteFloat, ...]
    kind: GridKind

    @model_validator(mode="after")
    def _valid_tabulation(self) -> Self:
        if len(self.values) != len(self.grid):
            raise ValueError(f"grid has {len(self.grid)} points but values has {len(self.values)}")

        x, y = self.x, self.y
        steps = np.diff(x)
        if self.kind is GridKind.PDF:
            if np.any(steps <= 0.0):
                raise ValueError("a PDF grid must be strictly increasing")
            if np.any(y < 0.0):
                raise ValueError("PDF values must be non-negative")
            mass = float(trapezoid(y, x))
            low, high = PDF_MASS_RANGE
            if not low <= mass <= high:
                raise ValueError(f"PDF integrates to {mass:.6f}, outside [{low}, {high}]")
            return self

        if np.any(steps < 0.0):
            raise ValueError("a CDF grid must be non-decreasing")
        if np.any((steps[:-1] == 0.0) & (steps[1:] == 0.0)):
            raise ValueError("a CDF abscissa may appear at most twice")
        if np.any(y < -MONOTONE_SLACK) or np.any(y > 1.0 + MONOTONE_SLACK):
            raise ValueError("CDF values must lie in [0, 1]")
        if np.any(np.diff(y) < -MONOTONE_SLACK):
            raise ValueError("CDF values must be non-decreasing")
        return self

    @property
    def x(self) -> FloatArray:
        return np.asarray(self.grid, dtype=np.float64)

    @property
    def y(self) -> FloatArray:
        return np.asarray(self.values, dtype=np.float64)

    @classmethod
    def from_arrays(cls, grid: ArrayLike, values: ArrayLike, kind: GridKind) -> Self:
        return cls(
            grid=tuple(np.asarray(grid, dtype=np.float64).tolist()),
            values=tuple(np.asarray(values, dtype=np.float64).tolist()),
            kind=kind,
        )


def standard_grid(
    points: int = DEFAULT_POINTS,
    half_width: float = DEFAULT_HALF_WIDTH,
) -> FloatArray:
    return np.linspace(-half_width, half_width, points)


def normal_cdf_grid(
    shift: float = 0.0,
    scale: float = 1.0,
    grid: ArrayLike | None = None,
) -> GridFunction:
    x = standard_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    return GridFunction.from_arrays(x, std_normal_cdf((x - shift) / scale), GridKind.CDF)


def normal_pdf_grid(
    shift: float = 0.0,
    scale: float = 1.0,
    grid: ArrayLike | None = None,
) -> GridFunction:
    x = standard_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    return GridFunction.from_arrays(x, std_normal_pdf((x - shift) / scale) / scale, GridKind.PDF)


def step_cdf(jumps: ArrayLike, cdf_values: ArrayLike, pad: float = 1.0) -> GridFunction:
    """
    Paired-point tabulation of a right-continuous step CDF that jumps to
    ``cdf_values[k]`` at ``jumps[k]``; one padding point sits on each side.
    """
    at = np.asarray(jumps, dtype=np.float64)
    after = np.asarray(cdf_values, dtype=np.float64)
    before = np.concatenate([[0.0], after[:-1]])

    grid = np.concatenate([[at[0] - pad], np.repeat(at, 2), [at[-1] + pad]])
    values = np.concatenate([[0.0], np.column_stack([before, after]).ravel(), [after[-1]]])
    return GridFunction.from_arrays(grid, values, GridKind.CDF)


def write_grid_csv(path: str | Path, fn: GridFunction) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        handle.write(f"# kind={fn.kind.value}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["x", "value"])
        writer.writerows([repr(x), repr(y)] for x, y in zip(fn.grid, fn.values))


def read_grid_csv(path: str | Path) -> GridFunction:
    path = Path(path)
    kind: GridKind | None = None
    grid: list[float] = []
    values: list[float] = []

    with path.open(newline="", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                key, _, value = text.lstrip("# ").partition("=")
                if key.strip() == "kind":
                    try:
                        kind = GridKind(value.strip().lower())
                    except ValueError:
                        raise ParseError(path, lineno, f"unknown kind {value.strip()!r}") from None
                continue
            cells = next(csv.reader([text]))
            if [cell.strip().lower() for cell in cells] == ["x", "value"]:
                continue
            if len(cells) != 2:
                raise ParseError(path, lineno, f"expected 2 columns, found {len(cells)}")
            try:
                x, y = float(cells[0]), float(cells[1])
            except ValueError:
                raise ParseError(path, lineno, f"not a number pair: {text!r}") from None
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ParseError(path, lineno, f"values must be finite: {text!r}")
            grid.append(x)
            values.append(y)

    if kind is None:
        raise ParseError(path, 1, "missing '# kind=cdf' or '# kind=pdf' header comment")
    return GridFunction(grid=tuple(grid), values=tuple(values), kind=kind)
