"""Fixed-size systematic selection of light components and assembly of Q'."""

from __future__ import annotations

from typing import Iterable, Sequence

from lowrank.errors import SamplingError
from lowrank.models.plan import LowRankSample, SamplingPlan


def _ordered_boundaries(plan: SamplingPlan, order: Sequence[int]) -> list[float]:
    """Cumulative segment ends when the light segments are laid out in ``order``."""
    probabilities = plan.inclusion_probabilities
    boundaries = []
    running = 0.0
    for pos in order:
        running += probabilities[pos]
        boundaries.append(running)
    boundaries[-1] = float(plan.light_budget)
    return boundaries


def segment_layout(
    plan: SamplingPlan, order: Sequence[int] | None = None
) -> tuple[list[int], list[float]]:
    """Component index and right boundary of every light segment, left to right.

    ``order`` lists light positions (0 for the first light component); the
    default keeps descending singular-value order.
    """
    light_count = len(plan.inclusion_probabilities)
    if order is None:
        return list(plan.light_indices), list(plan.segment_boundaries)
    if sorted(order) != list(range(light_count)):
        raise ValueError(f"segment order must be a permutation of range({light_count})")
    indices = [plan.heavy_count + pos for pos in order]
    return indices, _ordered_boundaries(plan, order)


def systematic_select(
    plan: SamplingPlan, s: float, order: Sequence[int] | None = None
) -> tuple[int, ...]:
    """Light components hit by the points ``s, s+1, ..., s+(r-k-1)``.

    Walks the segments once, including a component when its right boundary
    is ``>= s`` and then advancing ``s`` by one. The walk stops after
    ``r - k`` picks: with ``s == 0`` the point ``s + (r - k)`` sits on the
    final boundary and must not be taken. Returns sorted 0-based component
    indices; exactly ``r - k`` of them.
    """
    if plan.is_deterministic:
        raise ValueError("plan has no light components to select")
    if not 0.0 <= s < 1.0:
        raise ValueError(f"uniform draw must lie in [0, 1), got {s!r}")

    indices, boundaries = segment_layout(plan, order)
    selected = []
    point = s
    budget = plan.light_budget
    for index, boundary in zip(indices, boundaries):
        if len(selected) == budget:
            break
        if boundary >= point:
            selected.append(index)
            point += 1.0
            if len(selected) < budget and boundary >= point:
                raise SamplingError(f"segment of component {index} holds two sample points")

    if len(selected) != budget:
        raise SamplingError(f"selected {len(selected)} light components, expected {budget}")
    return tuple(sorted(selected))


def assemble_sample(
    plan: SamplingPlan,
    index_set: Iterable[int],
    s: float | None = None,
    order: Sequence[int] | None = None,
) -> LowRankSample:
    """Diagonal Q': d_i on heavy components, the fill value on ``index_set``, 0 elsewhere."""
    chosen = tuple(sorted(index_set))
    if len(chosen) != plan.light_budget or len(set(chosen)) != len(chosen):
        raise SamplingError(
            f"index set {chosen} does not hold exactly {plan.light_budget} distinct components"
        )
    light = set(plan.light_indices)
    if not light.issuperset(chosen):
        raise SamplingError(f"index set {chosen} contains non-light components")

    k = plan.heavy_count
    values = list(plan.singular_values[:k]) + [0.0] * (plan.n_components - k)
    for i in chosen:
        values[i] = plan.fill_value
    return LowRankSample(
        index_set=chosen,
        diag_values=tuple(values),
        uniform_draw=s,
        segment_order=tuple(order) if order is not None else None,
    )
