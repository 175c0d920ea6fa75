"""CSV matrices: one row per line, real cells or complex ``a+bi`` cells."""

from __future__ import annotations

import csv
import io
import math
import re
from pathlib import Path

import numpy as np

from lowrank.errors import MatrixFormatError

_IMAGINARY_UNIT = re.compile(r"[ij]\s*$", re.IGNORECASE)


def _parse_cell(text: str, *, path: str, line: int) -> complex:
    cell = "".join(text.split())
    if not cell:
        raise MatrixFormatError("empty cell", path=path, line=line)
    try:
        if _IMAGINARY_UNIT.search(cell):
            return complex(cell[:-1] + "j")
        return complex(float(cell))
    except ValueError:
        raise MatrixFormatError(f"cannot parse number {text!r}", path=path, line=line) from None


def parse_csv(text: str, path: str = "<string>") -> tuple[np.ndarray, bool]:
    """Parse CSV text. Returns the matrix and whether any cell was complex."""
    rows: list[list[complex]] = []
    is_complex = False
    width = None
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise MatrixFormatError(
                f"expected {width} columns, found {len(row)}", path=path, line=line
            )
        is_complex = is_complex or any(_IMAGINARY_UNIT.search(cell.strip()) for cell in row)
        rows.append([_parse_cell(cell, path=path, line=line) for cell in row])
    if not rows:
        raise MatrixFormatError("no matrix rows found", path=path)

    matrix = np.array(rows, dtype=np.complex128)
    if not np.all(np.isfinite(matrix)):
        raise MatrixFormatError("matrix contains NaN or infinite entries", path=path)
    if is_complex:
        return matrix, True
    return matrix.real.copy(), False


def read_csv(path: Path) -> tuple[np.ndarray, bool]:
    with open(path, "r", encoding="utf-8", newline="") as f:
        return parse_csv(f.read(), str(path))


def _format_real(x: float) -> str:
    return repr(float(x))


def _format_complex(z: complex) -> str:
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{_format_real(z.real)}{sign}{_format_real(abs(z.imag))}i"


def format_csv(matrix: np.ndarray, complex_cells: bool) -> str:
    fmt = _format_complex if complex_cells else _format_real
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    for row in np.asarray(matrix):
        writer.writerow([fmt(x) for x in row])
    return out.getvalue()


def write_csv(path: Path, matrix: np.ndarray, complex_cells: bool) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(format_csv(matrix, complex_cells))
