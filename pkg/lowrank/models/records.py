from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class SampleRecord(BaseModel):
    """One line of ``samples.jsonl`` written by ``lowrank approx``."""

    model_config = ConfigDict(frozen=True)

    index: int
    index_set: tuple[int, ...]
    uniform_draw: Optional[float] = None
    distortion: float


class RunMetadata(BaseModel):
    """Summary written next to the sampled matrices."""

    model_config = ConfigDict(frozen=True)

    schema_version: Literal[1] = Field(1, serialization_alias="schema")
    input: str
    format: str
    rank: int
    numerical_rank: int
    heavy_count: int
    fill_value: Optional[float] = None
    seed: int
    samples: int
    permute_segments: bool = False
    distortions: tuple[float, ...] = ()
    average_distortion: float
