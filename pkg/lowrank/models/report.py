from __future__ import annotations

import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class Outcome(BaseModel):
    model_config = ConfigDict(frozen=True)

    index_set: tuple[int, ...]
    probability: float
    distortion: Optional[float] = None


class OutcomeTable(BaseModel):
    """Exact distribution of the sampled index set over the uniform draw."""

    model_config = ConfigDict(frozen=True)

    outcomes: tuple[Outcome, ...]
    breakpoints: tuple[float, ...] = (0.0,)

    def total_probability(self) -> float:
        return math.fsum(o.probability for o in self.outcomes)

    def marginals(self, n_components: int) -> tuple[float, ...]:
        """Inclusion probability of every component across the table."""
        mass = [0.0] * n_components
        for outcome in self.outcomes:
            for i in outcome.index_set:
                mass[i] += outcome.probability
        return tuple(mass)


class MonteCarloEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    standard_error: float
    confidence_radius: float
    samples: int = Field(ge=1)

    def covers(self, value: float, atol: float = 1e-12) -> bool:
        return abs(self.mean - value) <= self.confidence_radius + atol


class UnbiasednessEstimate(BaseModel):
    """Entrywise comparison of the empirical mean of Q with P."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    mean: np.ndarray
    standard_errors: np.ndarray
    deviation: np.ndarray
    max_deviation: float
    exceedances: int
    samples: int
    confidence_sigmas: float


class DistortionReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    schema_version: Literal[1] = Field(1, serialization_alias="schema")
    rank: int
    numerical_rank: int
    heavy_count: int
    fill_value: Optional[float] = None
    expected_distortion: float
    lower_bound: float
    truncation_baseline: float
    empirical_mean_distortion: Optional[float] = None
    confidence_radius: Optional[float] = None
    samples: int = 0
    seed: Optional[int] = None
    empirical_within_radius: Optional[bool] = None
    max_mean_deviation: Optional[float] = None
    mean_exceedances: Optional[int] = None


class SuiteResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    checked: int
    failures: int
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0
