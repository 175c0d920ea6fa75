"""One-sided (Hestenes) Jacobi SVD.

Columns are orthogonalized pairwise with unitary plane rotations. Each sweep
visits every column pair once, grouped by a round-robin tournament so that
the pairs of one round are disjoint and can be rotated together as whole
array operations. The round order is fixed, so identical input bits give
identical factors.
"""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from lowrank.errors import SvdConvergenceError
from lowrank.linalg.dense import as_dense, complete_basis, tail_energy
from lowrank.linalg.factors import SvdFactors

logger = logging.getLogger(__name__)

DEFAULT_RANK_TOL = 1e-12
DEFAULT_SWEEP_TOL = 1e-14
DEFAULT_MAX_SWEEPS = 60

# "auto" runs Jacobi while the smaller dimension is at most this, LAPACK above.
AUTO_JACOBI_MAX_COLUMNS = 128

Backend = Literal["auto", "jacobi", "lapack"]


def _round_robin(count: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Disjoint column pairings covering all pairs once, one list entry per round."""
    players = list(range(count + count % 2))
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        left = players[: size // 2]
        right = players[size // 2 :][::-1]
        pairs = sorted(
            (min(a, b), max(a, b)) for a, b in zip(left, right) if a < count and b < count
        )
        if pairs:
            p, q = zip(*pairs)
            rounds.append((np.array(p), np.array(q)))
        players = [players[0], players[-1], *players[1:-1]]
    return rounds


def _column_sq_norms(x: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(x):
        return (x.real * x.real + x.imag * x.imag).sum(axis=0)
    return (x * x).sum(axis=0)


def _orthogonalize(work: np.ndarray, tol: float, max_sweeps: int) -> np.ndarray:
    """Rotate the columns of ``work`` in place until they are mutually orthogonal.

    Returns the accumulated right rotations (a unitary ``cols x cols`` matrix).
    """
    rows, cols = work.shape
    basis = np.eye(cols, dtype=work.dtype)
    # Rounding in a length-``rows`` inner product is about rows * eps relative;
    # asking for less than that never settles.
    threshold = max(tol, rows * np.finfo(float).eps)
    rounds = _round_robin(cols)

    residual = 0.0
    for sweep in range(1, max_sweeps + 1):
        residual = 0.0
        for p, q in rounds:
            gp = work[:, p]
            gq = work[:, q]
            alpha = _column_sq_norms(gp)
            beta = _column_sq_norms(gq)
            gamma = (gp.conj() * gq).sum(axis=0)
            mod = np.abs(gamma)
            scale = np.sqrt(alpha * beta)
            active = mod > threshold * scale
            if not active.any():
                continue
            residual = max(residual, float(np.max(mod[active] / scale[active])))

            p, q = p[active], q[active]
            gp, gq = gp[:, active], gq[:, active]
            alpha, beta, gamma, mod = alpha[active], beta[active], gamma[active], mod[active]

            zeta = (beta - alpha) / (2.0 * mod)
            t = np.where(zeta >= 0, 1.0, -1.0) / (np.abs(zeta) + np.hypot(1.0, zeta))
            c = 1.0 / np.hypot(1.0, t)
            s = c * t
            phase = gamma / mod

            work[:, p] = c * gp - s * phase.conj() * gq
            work[:, q] = s * phase * gp + c * gq
            vp = basis[:, p]
            vq = basis[:, q]
            basis[:, p] = c * vp - s * phase.conj() * vq
            basis[:, q] = s * phase * vp + c * vq

        if residual == 0.0:
            logger.debug("Jacobi converged after %d sweeps (%d x %d)", sweep, rows, cols)
            return basis

    raise SvdConvergenceError(max_sweeps, residual)


def _fix_phases(u: np.ndarray, v: np.ndarray) -> None:
    """Make the largest-modulus entry of every column of ``u`` real and non-negative."""
    cols = np.arange(u.shape[1])
    pivots = np.argmax(np.abs(u), axis=0)
    lead = u[pivots, cols]
    mod = np.abs(lead)
    phase = np.where(mod > 0, lead / np.where(mod > 0, mod, 1), 1)
    u *= phase.conj()
    v *= phase.conj()
    # Rounding in the product can leave a residual imaginary part on the pivot.
    u[pivots, cols] = mod


def _jacobi_tall(
    a: np.ndarray, tol: float, max_sweeps: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """SVD of a matrix with at least as many rows as columns.

    Strictly tall input is first reduced to its square ``R`` factor: the
    rotations that orthogonalize the columns of ``R`` do the same for
    ``A = QR``, and every sweep then works on ``cols`` rows only.
    """
    rows, cols = a.shape
    if rows > cols:
        q, r = np.linalg.qr(a)
        work = np.array(r, copy=True)
    else:
        q, work = None, np.array(a, copy=True)
    basis = _orthogonalize(work, tol, max_sweeps)
    if q is not None:
        work = q @ work
    sigma = np.sqrt(_column_sq_norms(work))
    order = np.argsort(-sigma, kind="stable")
    return work[:, order], sigma[order], basis[:, order]


def svd(
    p: object,
    rank_tol: float = DEFAULT_RANK_TOL,
    *,
    tol: float = DEFAULT_SWEEP_TOL,
    max_sweeps: int = DEFAULT_MAX_SWEEPS,
    backend: Backend = "jacobi",
) -> SvdFactors:
    """Thin SVD of ``p`` with a fixed phase convention.

    ``rank_tol`` is relative to the largest singular value: the numerical rank
    is the number of values above ``rank_tol * d_1``.
    ``backend="auto"`` uses Jacobi up to ``AUTO_JACOBI_MAX_COLUMNS`` columns of
    the tall orientation and ``numpy.linalg.svd`` beyond.
    """
    a = as_dense(p)
    n, m = a.shape
    wide = n < m
    tall = a.conj().T if wide else a
    if backend == "auto":
        backend = "jacobi" if tall.shape[1] <= AUTO_JACOBI_MAX_COLUMNS else "lapack"
        logger.debug("SVD backend auto -> %s for %d x %d", backend, n, m)

    if backend == "lapack":
        u_raw, sigma, vh = np.linalg.svd(tall, full_matrices=False)
        work = u_raw * sigma
        basis = vh.conj().T
    elif backend == "jacobi":
        work, sigma, basis = _jacobi_tall(tall, tol, max_sweeps)
    else:
        raise ValueError(f"unknown SVD backend {backend!r}")

    top = sigma[0] if sigma.size else 0.0
    rank = int(np.count_nonzero(sigma > rank_tol * top)) if top > 0 else 0

    left = complete_basis(work[:, :rank] / sigma[:rank], work.shape[1])

    if wide:
        u, v = basis, left
    else:
        u, v = left, basis
    u = np.array(u, copy=True)
    v = np.array(v, copy=True)
    _fix_phases(u, v)

    return SvdFactors(u=u, singular_values=sigma, v=v, numerical_rank=rank)


def singular_values(p: object, **kwargs) -> np.ndarray:
    return np.array(svd(p, **kwargs).singular_values)


def reconstruct(f: SvdFactors) -> np.ndarray:
    """U diag(d) V*."""
    return (f.u * f.singular_values) @ f.vh


def truncate_rank(f: SvdFactors, r: int) -> np.ndarray:
    """Best rank-``r`` approximation in Frobenius norm (Eckart-Young-Mirsky)."""
    if r < 0:
        raise ValueError(f"rank must be non-negative, got {r}")
    r = min(r, f.singular_values.shape[0])
    if r == 0:
        dtype = np.result_type(f.u.dtype, f.v.dtype)
        return np.zeros(f.shape, dtype=dtype)
    return (f.u[:, :r] * f.singular_values[:r]) @ f.vh[:r, :]


def truncation_error_sq(f: SvdFactors, r: int) -> float:
    """Squared Frobenius error of ``truncate_rank(f, r)``: sum of d_i^2 for i > r."""
    return tail_energy(f.singular_values, r)
