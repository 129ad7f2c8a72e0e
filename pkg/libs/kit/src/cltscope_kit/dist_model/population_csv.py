import csv
import math
from pathlib import Path

from cltscope_core.errors import ParseError, InvalidInputError

from .types import FinitePopulation


def read_population_csv(path: str | Path, header: bool = False) -> FinitePopulation:
    """
    Loads a single numeric column. Blank lines are skipped; with ``header``
    the first non-blank line is a column name.
    """
    path = Path(path)
    values: list[float] = []
    header_pending = header

    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        for row in reader:
            cells = [cell.strip() for cell in row]
            if not any(cells):
                continue
            if header_pending:
                header_pending = False
                continue
            if len(cells) != 1:
                raise ParseError(path, reader.line_num, f"expected 1 column, found {len(cells)}")
            try:
                value = float(cells[0])
            except ValueError:
                raise ParseError(path, reader.line_num, f"not a number: {cells[0]!r}") from None
            if not math.isfinite(value):
                raise ParseError(path, reader.line_num, f"value is not finite: {cells[0]!r}")
            values.append(value)

    if len(set(values)) < 2:
        raise InvalidInputError(f"{path} holds fewer than 2 distinct values")
    return FinitePopulation(values=tuple(values))


def write_population_csv(
    path: str | Path,
    population: FinitePopulation,
    header: bool = True,
) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if header:
            writer.writerow(["value"])
        writer.writerows([repr(value)] for value in population.values)
