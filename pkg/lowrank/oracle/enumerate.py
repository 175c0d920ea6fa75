"""Exact outcome distribution of the systematic sampler.

The selected index set is piecewise constant in the uniform draw S, with
jumps only at the fractional parts of the segment boundaries. Evaluating the
selector once inside every cell yields the full distribution.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from lowrank.models.plan import SamplingPlan
from lowrank.models.report import Outcome, OutcomeTable
from lowrank.sampler.systematic import assemble_sample, segment_layout, systematic_select

DEFAULT_ENUMERATE_LIMIT = 24
BREAKPOINT_MERGE_TOL = 1e-12


def outcome_distortion(plan: SamplingPlan, index_set: Iterable[int]) -> float:
    """||Q'(I) - Lambda||_F^2 for the realization with light index set I."""
    sample = assemble_sample(plan, index_set)
    return math.fsum((q - d) ** 2 for q, d in zip(sample.diag_values, plan.singular_values))


def breakpoints(
    plan: SamplingPlan,
    order: Sequence[int] | None = None,
    merge_tol: float = BREAKPOINT_MERGE_TOL,
) -> list[float]:
    """Sorted cell left edges in [0, 1), near-duplicates merged."""
    _, bounds = segment_layout(plan, order)
    fractions = sorted({0.0, *(b - math.floor(b) for b in bounds)})
    points: list[float] = []
    for x in fractions:
        if 1.0 - x <= merge_tol:
            continue
        if not points or x - points[-1] > merge_tol:
            points.append(x)
    return points


def enumerate_outcomes(
    plan: SamplingPlan,
    order: Sequence[int] | None = None,
    *,
    limit: int = DEFAULT_ENUMERATE_LIMIT,
    merge_tol: float = BREAKPOINT_MERGE_TOL,
) -> OutcomeTable:
    if plan.is_deterministic:
        return OutcomeTable(
            outcomes=(
                Outcome(index_set=(), probability=1.0, distortion=outcome_distortion(plan, ())),
            ),
        )
    light_count = len(plan.inclusion_probabilities)
    if light_count > limit:
        raise ValueError(f"{light_count} light components exceeds the enumeration limit {limit}")

    points = breakpoints(plan, order, merge_tol)
    edges = [*points, 1.0]
    mass: dict[tuple[int, ...], float] = {}
    for lo, hi in zip(edges, edges[1:]):
        chosen = systematic_select(plan, 0.5 * (lo + hi), order)
        mass[chosen] = mass.get(chosen, 0.0) + (hi - lo)

    outcomes = tuple(
        Outcome(index_set=chosen, probability=prob, distortion=outcome_distortion(plan, chosen))
        for chosen, prob in sorted(mass.items())
    )
    return OutcomeTable(outcomes=outcomes, breakpoints=tuple(points))


def expected_distortion_from_outcomes(table: OutcomeTable, plan: SamplingPlan) -> float:
    total = []
    for o in table.outcomes:
        distortion = o.distortion
        if distortion is None:
            distortion = outcome_distortion(plan, o.index_set)
        total.append(o.probability * distortion)
    return math.fsum(total)
