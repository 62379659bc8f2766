import io
import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd
import structlog

from .Errors import IoError, ParseError
from .System import KnotGrid

logger = structlog.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Dataset:
    """Knot/value pairs read from a two-column CSV file.

    The file is UTF-8 with decimal-point floats; blank lines and lines
    starting with ``#`` are skipped, and a leading non-numeric row is taken
    as the header (``t,z``).
    """

    knots: np.ndarray  #: The abscissae t_1 < ... < t_n.
    values: np.ndarray  #: The data values z_1, ..., z_n.
    lines: tuple = ()  #: The 1-based source line of every data row.

    @property
    def grid(self) -> KnotGrid:
        """The knots as a KnotGrid."""
        return KnotGrid(self.knots)

    @classmethod
    def from_csv(cls, path):
        """Reads and validates a data file.

        Args:
            path: The CSV file to read.

        Returns:
            Dataset: The parsed data.

        Raises:
            IoError: If the file cannot be read.
            ParseError: If a row is malformed, a field is not a finite
                number, or the knots are not strictly increasing. The error
                carries the offending line and column.
        """
        path = Path(path)
        try:
            raw = path.read_bytes()
        except OSError as error:
            raise IoError(f"cannot read {path}: {error.strerror}") from error
        try:
            text = raw.decode("utf-8")
        except UnicodeDecodeError as error:
            line = raw[: error.start].count(b"\n") + 1
            raise ParseError("input is not valid UTF-8", line=line) from error

        numbers, rows = [], []
        for number, line in enumerate(text.splitlines(), start=1):
            stripped = line.strip()
            if stripped and not stripped.startswith("#"):
                numbers.append(number)
                rows.append(stripped)
        if not rows:
            raise ParseError("no data rows", line=max(len(text.splitlines()), 1))

        try:
            frame = pd.read_csv(
                io.StringIO("\n".join(rows)),
                header=None,
                dtype=str,
                keep_default_na=False,
                skipinitialspace=True,
                engine="python",
            )
        except pd.errors.ParserError as error:
            match = re.search(r"line (\d+)", str(error))
            line = numbers[int(match.group(1)) - 1] if match else None
            raise ParseError("expected two fields t,z", line=line) from error
        frame = frame.fillna("").apply(lambda column: column.str.strip())

        if _is_header(frame.iloc[0]):
            frame = frame.iloc[1:].reset_index(drop=True)
            numbers = numbers[1:]
        if frame.empty:
            raise ParseError("no data rows after the header", line=1)

        for row, fields in enumerate(frame.itertuples(index=False)):
            if len(fields) < 2 or fields[1] == "":
                raise ParseError("missing value field", line=numbers[row], column=2)
            if any(field != "" for field in fields[2:]):
                raise ParseError("expected two fields t,z", line=numbers[row], column=3)

        parsed = frame.iloc[:, :2].apply(pd.to_numeric, errors="coerce")
        bad = ~np.isfinite(parsed.to_numpy(dtype=float))
        if bad.any():
            row, column = np.argwhere(bad)[0]
            raise ParseError(
                f"not a finite number: {frame.iat[row, column]!r}",
                line=numbers[row],
                column=int(column) + 1,
            )

        knots = parsed.iloc[:, 0].to_numpy(dtype=float)
        values = parsed.iloc[:, 1].to_numpy(dtype=float)
        if knots.size < 2:
            raise ParseError("at least two data rows are needed", line=numbers[-1])
        steps = np.diff(knots)
        if np.any(steps <= 0):
            row = int(np.argmax(steps <= 0)) + 1
            raise ParseError(
                "knots must be strictly increasing", line=numbers[row], column=1
            )

        logger.debug("read dataset", path=str(path), rows=knots.size)
        return cls(knots, values, tuple(numbers))


def _is_number(field: str) -> bool:
    try:
        float(field)
    except ValueError:
        return False
    return True


def _is_header(fields) -> bool:
    # nan and inf tokens count as numbers, so such rows fail later as data
    return not any(_is_number(field) for field in fields)
