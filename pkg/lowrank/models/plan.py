from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field


class SamplingPlan(BaseModel):
    """Precomputed state of one low-rank sampling run.

    Indices are 0-based: components ``0 .. heavy_count-1`` are heavy and kept
    in every realization, components ``heavy_count .. N-1`` are light.
    """

    model_config = ConfigDict(frozen=True)

    singular_values: tuple[float, ...]
    rank: int = Field(ge=1)
    heavy_count: int = Field(ge=0)
    fill_value: Optional[float] = None
    scale: Optional[float] = None
    inclusion_probabilities: tuple[float, ...] = ()
    segment_boundaries: tuple[float, ...] = ()

    @property
    def n_components(self) -> int:
        return len(self.singular_values)

    @property
    def light_budget(self) -> int:
        """How many light components every realization includes (r - k)."""
        return min(self.rank, self.n_components) - self.heavy_count

    @property
    def light_indices(self) -> range:
        return range(self.heavy_count, self.n_components)

    @property
    def is_deterministic(self) -> bool:
        return self.light_budget == 0

    @property
    def keeps_all(self) -> bool:
        """r >= N: every realization reproduces the input exactly."""
        return self.rank >= self.n_components


class LowRankSample(BaseModel):
    """One realization: the sampled light index set and the diagonal Q'."""

    model_config = ConfigDict(frozen=True)

    index_set: tuple[int, ...]
    diag_values: tuple[float, ...]
    uniform_draw: Optional[float] = None
    segment_order: Optional[tuple[int, ...]] = None

    @property
    def nonzero_count(self) -> int:
        return sum(1 for v in self.diag_values if v != 0.0)
