from __future__ import annotations

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from lowrank.linalg.dense import complete_basis


class SvdFactors(BaseModel):
    """Thin SVD ``P = U diag(d) V*`` with singular values in descending order.

    ``u`` is n x p and ``v`` is m x p with p = min(n, m). Columns beyond the
    numerical rank are an orthonormal completion, not data-derived vectors.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray
    numerical_rank: int

    @field_validator("u", "singular_values", "v")
    @classmethod
    def _freeze(cls, arr: np.ndarray) -> np.ndarray:
        arr = np.array(arr, copy=True)
        arr.setflags(write=False)
        return arr

    @model_validator(mode="after")
    def _check_shapes(self) -> "SvdFactors":
        p = self.singular_values.shape[0]
        if self.u.ndim != 2 or self.v.ndim != 2:
            raise ValueError("u and v must be 2-D")
        if self.u.shape[1] != p or self.v.shape[1] != p:
            raise ValueError(
                f"factor widths {self.u.shape[1]}, {self.v.shape[1]} do not match {p} values"
            )
        if np.any(self.singular_values < 0) or np.any(np.diff(self.singular_values) > 0):
            raise ValueError("singular values must be non-negative and descending")
        if not 0 <= self.numerical_rank <= p:
            raise ValueError(f"numerical rank {self.numerical_rank} outside [0, {p}]")
        return self

    @property
    def shape(self) -> tuple[int, int]:
        return self.u.shape[0], self.v.shape[0]

    @property
    def vh(self) -> np.ndarray:
        return self.v.conj().T

    @property
    def leading_values(self) -> np.ndarray:
        """The positive singular values d_1..d_N."""
        return self.singular_values[: self.numerical_rank]

    def full_u(self) -> np.ndarray:
        """Square unitary left factor (n x n)."""
        return complete_basis(np.array(self.u), self.u.shape[0])

    def full_v(self) -> np.ndarray:
        """Square unitary right factor (m x m)."""
        return complete_basis(np.array(self.v), self.v.shape[0])

    def transformed(self, left: np.ndarray, right: np.ndarray) -> "SvdFactors":
        """Factors of ``left @ P @ right*`` for unitary ``left`` and ``right``."""
        return SvdFactors(
            u=left @ self.u,
            singular_values=self.singular_values,
            v=right @ self.v,
            numerical_rank=self.numerical_rank,
        )
