"""Heavy/light split and inclusion probabilities for the singular components."""

from __future__ import annotations

import logging
import math
from typing import Sequence

from lowrank.errors import SamplingError
from lowrank.models.plan import SamplingPlan

logger = logging.getLogger(__name__)

# Largest tolerated gap between the accumulated segment lengths and r - k
# before the final boundary is clamped.
BOUNDARY_SLACK = 1e-9
# Relative slack on the d_k >= c ordering of the last heavy value.
ORDERING_SLACK = 1e-12


def _validate(d: Sequence[float], r: int) -> list[float]:
    values = [float(x) for x in d]
    if r < 1:
        raise ValueError(f"rank must be at least 1, got {r}")
    if any(not math.isfinite(x) or x <= 0 for x in values):
        raise ValueError("singular values must be finite and strictly positive")
    if any(a < b for a, b in zip(values, values[1:])):
        raise ValueError("singular values must be in descending order")
    return values


def _tail_sums(d: Sequence[float]) -> list[float]:
    """``tails[j] = sum(d[j:])``, each correctly rounded; ``tails[N] = 0``."""
    return [math.fsum(d[j:]) for j in range(len(d))] + [0.0]


def heavy_split(d: Sequence[float], r: int, start: int = 0) -> int:
    """Number of heavy components k.

    k is the smallest k' with ``(r - k') * d[k'] < sum(d[k':])``, or
    ``min(r, N)`` when no k' qualifies. Equality does not qualify. Because the
    condition is monotone in k', starting the scan at any ``start <= k`` gives
    the same answer.
    """
    values = _validate(d, r)
    limit = min(r, len(values))
    if not 0 <= start <= limit:
        raise ValueError(f"start must lie in [0, {limit}], got {start}")
    tails = _tail_sums(values)
    for k in range(start, limit):
        # The second test rejects a hair-thin pass whose rounded probability is 1.
        if (r - k) * values[k] < tails[k] and (r - k) / tails[k] * values[k] < 1.0:
            return k
    return limit


def build_plan(d: Sequence[float], r: int) -> SamplingPlan:
    values = _validate(d, r)
    k = heavy_split(values, r)
    budget = min(r, len(values)) - k
    if budget == 0:
        logger.debug("Deterministic plan: r=%d keeps %d of %d components", r, k, len(values))
        return SamplingPlan(singular_values=tuple(values), rank=r, heavy_count=k)

    light = values[k:]
    light_mass = math.fsum(light)
    fill = light_mass / budget
    scale = budget / light_mass
    probabilities = tuple(scale * x for x in light)

    boundaries = []
    running = 0.0
    for p in probabilities:
        running += p
        boundaries.append(running)
    if abs(running - budget) > BOUNDARY_SLACK:
        raise SamplingError(
            f"segment lengths sum to {running!r}, expected {budget} (gap exceeds {BOUNDARY_SLACK})"
        )
    boundaries[-1] = float(budget)

    if k >= 1 and values[k - 1] < fill * (1 - ORDERING_SLACK):
        raise SamplingError(
            f"heavy value d[{k - 1}]={values[k - 1]!r} is below fill value {fill!r}"
        )
    if not all(0.0 < p < 1.0 for p in probabilities):
        raise SamplingError("light inclusion probabilities must lie strictly between 0 and 1")

    return SamplingPlan(
        singular_values=tuple(values),
        rank=r,
        heavy_count=k,
        fill_value=fill,
        scale=scale,
        inclusion_probabilities=probabilities,
        segment_boundaries=tuple(boundaries),
    )
