from __future__ import annotations

import numpy as np


class WelfordAccumulator:
    """Streaming mean and variance of scalars or equally shaped arrays.

    Complex values are supported; the variance is E|x - mean|^2. Two
    accumulators over disjoint sample runs combine with ``merge``.
    """

    def __init__(self) -> None:
        self.count = 0
        self._mean: np.ndarray | None = None
        self._m2: np.ndarray | None = None

    def update(self, x) -> None:
        x = np.asarray(x)
        self.count += 1
        if self._mean is None:
            dtype = np.complex128 if np.iscomplexobj(x) else np.float64
            self._mean = x.astype(dtype, copy=True)
            self._m2 = np.zeros(x.shape, dtype=np.float64)
            return
        delta = x - self._mean
        self._mean = self._mean + delta / self.count
        self._m2 = self._m2 + (np.conj(delta) * (x - self._mean)).real

    def merge(self, other: "WelfordAccumulator") -> None:
        if other.count == 0:
            return
        if self.count == 0:
            self.count = other.count
            self._mean = other._mean.copy()
            self._m2 = other._m2.copy()
            return
        total = self.count + other.count
        delta = other._mean - self._mean
        self._mean = self._mean + delta * (other.count / total)
        self._m2 = (
            self._m2
            + other._m2
            + (np.conj(delta) * delta).real * (self.count * other.count / total)
        )
        self.count = total

    @property
    def mean(self) -> np.ndarray:
        if self._mean is None:
            raise ValueError("no samples accumulated")
        return self._mean

    @property
    def variance(self) -> np.ndarray:
        """Unbiased sample variance; zero with fewer than two samples."""
        if self._m2 is None:
            raise ValueError("no samples accumulated")
        if self.count < 2:
            return np.zeros_like(self._m2)
        return self._m2 / (self.count - 1)

    @property
    def standard_error(self) -> np.ndarray:
        return np.sqrt(self.variance / self.count)
