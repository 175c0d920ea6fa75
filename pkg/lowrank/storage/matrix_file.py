from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from lowrank.errors import MatrixFormatError
from lowrank.storage.matrix_csv import read_csv, write_csv
from lowrank.storage.pgm import read_pgm, write_pgm


class MatrixFormat(str, Enum):
    CSV_REAL = "csv-real"
    CSV_COMPLEX = "csv-complex"
    PGM = "pgm"


class MatrixFile(BaseModel):
    """A matrix together with the on-disk format it came from."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    format: MatrixFormat
    payload: np.ndarray
    maxval: Optional[int] = None
    pgm_variant: Optional[str] = None

    @property
    def suffix(self) -> str:
        return ".pgm" if self.format == MatrixFormat.PGM else ".csv"


def read_matrix(path: Path) -> MatrixFile:
    """Read a CSV or PGM matrix, choosing the parser by file suffix."""
    path = Path(path)
    if path.suffix.lower() == ".pgm":
        matrix, maxval, variant = read_pgm(path)
        return MatrixFile(
            format=MatrixFormat.PGM, payload=matrix, maxval=maxval, pgm_variant=variant
        )
    matrix, is_complex = read_csv(path)
    fmt = MatrixFormat.CSV_COMPLEX if is_complex else MatrixFormat.CSV_REAL
    return MatrixFile(format=fmt, payload=matrix)


def write_matrix(path: Path, matrix: np.ndarray, like: MatrixFile) -> Path:
    """Write ``matrix`` in the same format as ``like``; returns the path written."""
    path = Path(path)
    if like.format == MatrixFormat.PGM:
        if like.maxval is None:
            raise MatrixFormatError("PGM output needs a maxval", path=str(path))
        write_pgm(path, matrix, like.maxval, like.pgm_variant or "P5")
    else:
        complex_cells = like.format == MatrixFormat.CSV_COMPLEX or np.iscomplexobj(matrix)
        write_csv(path, matrix, complex_cells)
    return path
