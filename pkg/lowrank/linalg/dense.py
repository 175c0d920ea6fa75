"""Dense matrix helpers and Frobenius geometry."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


def as_dense(a: object) -> np.ndarray:
    """Coerce ``a`` to a finite 2-D float64 or complex128 array.

    Real input stays real so the Jacobi sweeps run in real arithmetic.
    """
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"matrix must have at least one row and one column, got {arr.shape}")
    dtype = np.complex128 if np.iscomplexobj(arr) else np.float64
    arr = arr.astype(dtype, copy=False)
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains NaN or infinite entries")
    return arr


def _squared_moduli(a: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(a):
        return (a.real * a.real + a.imag * a.imag).ravel()
    return (a * a).ravel()


def frobenius_norm_sq(a: object) -> float:
    """Sum of squared moduli, correctly rounded."""
    return math.fsum(_squared_moduli(as_dense(a)))


def frobenius_dist_sq(a: object, b: object) -> float:
    a = as_dense(a)
    b = as_dense(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return math.fsum(_squared_moduli(a - b))


def tail_energy(values: Sequence[float] | np.ndarray, r: int) -> float:
    """Squared mass left after keeping the ``r`` largest-magnitude values.

    This is the Eckart-Young-Mirsky error of approximating a diagonal matrix
    with these entries by a rank-``r`` matrix.
    """
    if r < 0:
        raise ValueError(f"rank must be non-negative, got {r}")
    mags = np.sort(np.abs(np.asarray(values, dtype=float)))[::-1]
    return math.fsum(mags[r:] ** 2)


def complete_basis(columns: np.ndarray, size: int) -> np.ndarray:
    """Extend orthonormal ``columns`` (n x k) to ``size`` orthonormal columns.

    The extra columns come from a QR factorization of ``[columns | I]`` so the
    result is deterministic for identical input.
    """
    n, k = columns.shape
    if k >= size:
        return columns[:, :size]
    stacked = np.hstack([columns, np.eye(n, dtype=columns.dtype)])
    q, _ = np.linalg.qr(stacked, mode="complete")
    return np.hstack([columns, q[:, k:size]])
