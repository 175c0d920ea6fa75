"""Closed-form optimum and the matching lower bound.

Both quantities are evaluated by separate formulas so that their agreement
is a real check of optimality rather than an identity in the code.
"""

from __future__ import annotations

import logging
import math
from typing import Iterable, Sequence

from lowrank.errors import VerificationError
from lowrank.linalg.dense import tail_energy
from lowrank.models.plan import SamplingPlan
from lowrank.models.report import DistortionReport
from lowrank.sampler.plan import ORDERING_SLACK, build_plan
from lowrank.sampler.systematic import assemble_sample

logger = logging.getLogger(__name__)

DEFAULT_REL_TOL = 1e-10


def expected_distortion_closed_form(d: Sequence[float], r: int) -> float:
    """E||Q' - Lambda||_F^2 = (r - k) c^2 - sum_{i>k} d_i^2.

    Zero when r >= N. A plan with no light budget and r < N is a plain
    truncation and costs sum_{i>r} d_i^2.
    """
    plan = build_plan(d, r)
    if plan.is_deterministic:
        return tail_energy(plan.singular_values, r)
    light = plan.singular_values[plan.heavy_count :]
    c = plan.fill_value
    return math.fsum([plan.light_budget * c * c, *(-x * x for x in light)])


def shifted_target(plan: SamplingPlan) -> list[float]:
    """Diagonal of Lambda - B: heavy d_i, then the fill value on every light slot."""
    k = plan.heavy_count
    if plan.is_deterministic:
        return list(plan.singular_values)
    return [*plan.singular_values[:k], *([plan.fill_value] * (plan.n_components - k))]


def lower_bound(d: Sequence[float], r: int) -> float:
    """min over rank-r X of ||X - (Lambda - B)||^2 minus ||B||^2."""
    plan = build_plan(d, r)
    target = shifted_target(plan)
    k = plan.heavy_count
    if 1 <= k < plan.n_components and target[k - 1] < target[k] * (1 - ORDERING_SLACK):
        raise VerificationError(
            f"heavy value {target[k - 1]!r} below fill value {target[k]!r}: "
            "diagonal of Lambda - B not ordered"
        )
    best_fixed = tail_energy(target, r)
    b_energy = math.fsum((x - t) ** 2 for x, t in zip(plan.singular_values, target))
    return best_fixed - b_energy


def realization_gap(plan: SamplingPlan, index_set: Iterable[int]) -> float:
    """||Q'(I) - (Lambda - B)||_F^2; equals (N - r) c^2 for every realization."""
    sample = assemble_sample(plan, index_set)
    return math.fsum((q - t) ** 2 for q, t in zip(sample.diag_values, shifted_target(plan)))


def truncation_baseline(d: Sequence[float], r: int) -> float:
    """Deterministic best rank-r error, sum_{i>r} d_i^2."""
    return tail_energy(d, r)


def _close(a: float, b: float, rel_tol: float) -> bool:
    return abs(a - b) <= rel_tol * max(1.0, abs(a), abs(b))


def verify_optimality(
    d: Sequence[float], r: int, rel_tol: float = DEFAULT_REL_TOL
) -> DistortionReport:
    """Check that the closed-form optimum meets the lower bound and beats no truncation."""
    plan = build_plan(d, r)
    expected = expected_distortion_closed_form(d, r)
    bound = lower_bound(d, r)
    baseline = truncation_baseline(d, r)

    if not _close(expected, bound, rel_tol):
        raise VerificationError(
            f"expected distortion {expected!r} != lower bound {bound!r} (r={r})"
        )
    slack = rel_tol * max(1.0, baseline)
    if expected < baseline - slack or bound < baseline - slack:
        raise VerificationError(
            f"distortion {expected!r} below the truncation baseline {baseline!r} (r={r})"
        )
    logger.debug("Optimality verified: r=%d value=%r baseline=%r", r, expected, baseline)

    return DistortionReport(
        rank=r,
        numerical_rank=plan.n_components,
        heavy_count=plan.heavy_count,
        fill_value=plan.fill_value,
        expected_distortion=expected,
        lower_bound=bound,
        truncation_baseline=baseline,
    )
