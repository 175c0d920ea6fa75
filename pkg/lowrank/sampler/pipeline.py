"""End-to-end unbiased rank-r sampling of a dense matrix."""

from __future__ import annotations

import logging
from typing import Iterator, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from lowrank.linalg import SvdFactors, as_dense, svd
from lowrank.models.plan import LowRankSample, SamplingPlan
from lowrank.sampler.plan import build_plan
from lowrank.sampler.rng import draw_uniform, sample_rng, segment_order
from lowrank.sampler.systematic import assemble_sample, systematic_select

logger = logging.getLogger(__name__)


class SampleOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    permute_segments: bool = False


def plan_for(factors: SvdFactors, r: int) -> SamplingPlan:
    """Sampling plan over the numerically nonzero singular values."""
    return build_plan(factors.leading_values.tolist(), r)


def draw_sample(
    plan: SamplingPlan, rng: np.random.Generator, options: SampleOptions = SampleOptions()
) -> LowRankSample:
    """Draw one diagonal Q' from ``plan``; consumes nothing for deterministic plans."""
    if plan.is_deterministic:
        return assemble_sample(plan, ())
    s = draw_uniform(rng)
    order = None
    if options.permute_segments:
        order = segment_order(rng, len(plan.inclusion_probabilities))
    return assemble_sample(plan, systematic_select(plan, s, order), s, order)


def compose(factors: SvdFactors, sample: LowRankSample) -> np.ndarray:
    """Q = U diag(Q') V* restricted to the leading components."""
    n = len(sample.diag_values)
    q_diag = np.asarray(sample.diag_values)
    return (factors.u[:, :n] * q_diag) @ factors.vh[:n, :]


def realize(
    a: np.ndarray, factors: SvdFactors, plan: SamplingPlan, sample: LowRankSample
) -> np.ndarray:
    """Q for one draw: ``a`` itself when r >= N, otherwise the composed factors.

    A plan with no light budget but r < N (tail below rounding) still
    truncates to rank r.
    """
    if plan.keeps_all:
        return a.copy()
    return compose(factors, sample)


def sample_low_rank(
    p: object,
    r: int,
    rng: np.random.Generator,
    options: SampleOptions = SampleOptions(),
    factors: Optional[SvdFactors] = None,
    **svd_options,
) -> tuple[np.ndarray, LowRankSample]:
    """Draw Q with E[Q] = P, rank(Q) <= r and minimum E||P - Q||_F^2.

    Pass ``factors`` to reuse an SVD of ``p`` across draws. When ``r`` is at
    least the numerical rank, Q is ``p`` itself.
    """
    if r < 1:
        raise ValueError(f"rank must be at least 1, got {r}")
    a = as_dense(p)
    if factors is None:
        factors = svd(a, **svd_options)
    elif factors.shape != a.shape:
        raise ValueError(f"factors of shape {factors.shape} do not match matrix {a.shape}")

    plan = plan_for(factors, r)
    sample = draw_sample(plan, rng, options)
    return realize(a, factors, plan, sample), sample


def sample_many(
    p: object,
    r: int,
    seed: int,
    count: int,
    options: SampleOptions = SampleOptions(),
    factors: Optional[SvdFactors] = None,
    **svd_options,
) -> Iterator[tuple[np.ndarray, LowRankSample]]:
    """``count`` independent samples sharing one SVD; sample i uses stream (seed, i)."""
    if count < 0:
        raise ValueError(f"sample count must be non-negative, got {count}")
    a = as_dense(p)
    if factors is None:
        factors = svd(a, **svd_options)
    elif factors.shape != a.shape:
        raise ValueError(f"factors of shape {factors.shape} do not match matrix {a.shape}")
    plan = plan_for(factors, r)
    logger.info(
        "Sampling %d matrices: N=%d r=%d k=%d fill=%s",
        count,
        plan.n_components,
        r,
        plan.heavy_count,
        plan.fill_value,
    )
    for index in range(count):
        sample = draw_sample(plan, sample_rng(seed, index), options)
        yield realize(a, factors, plan, sample), sample
