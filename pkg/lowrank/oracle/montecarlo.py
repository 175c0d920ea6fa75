"""Monte-Carlo estimates of unbiasedness and distortion.

Samples are split into fixed-size chunks. Each chunk accumulates its samples
in index order and chunks merge in index order, so the numbers do not depend
on how many threads ran the chunks.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

import numpy as np
from tqdm import tqdm

from lowrank.linalg import SvdFactors, as_dense, frobenius_dist_sq, svd
from lowrank.models.report import DistortionReport, MonteCarloEstimate, UnbiasednessEstimate
from lowrank.oracle.bounds import verify_optimality
from lowrank.oracle.welford import WelfordAccumulator
from lowrank.sampler.pipeline import SampleOptions, compose, draw_sample, plan_for
from lowrank.sampler.rng import sample_rng

logger = logging.getLogger(__name__)

DEFAULT_SIGMAS = 4.0
DEFAULT_CHUNK_SIZE = 1024
MIN_UNBIASEDNESS_SAMPLES = 100


def _chunks(samples: int, chunk_size: int) -> list[tuple[int, int]]:
    return [(start, min(start + chunk_size, samples)) for start in range(0, samples, chunk_size)]


def _run_chunks(
    worker: Callable[[tuple[int, int]], WelfordAccumulator],
    samples: int,
    *,
    chunk_size: int,
    threads: int,
    progress: bool,
    desc: str,
) -> WelfordAccumulator:
    chunks = _chunks(samples, chunk_size)
    logger.info(
        "Monte-Carlo %s: %d samples in %d chunks, %d threads", desc, samples, len(chunks), threads
    )
    total = WelfordAccumulator()
    with tqdm(total=len(chunks), desc=desc, disable=not progress) as pbar:
        if threads <= 1:
            results = map(worker, chunks)
            for acc in results:
                total.merge(acc)
                pbar.update(1)
        else:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                for acc in pool.map(worker, chunks):
                    total.merge(acc)
                    pbar.update(1)
    return total


def _sampler(
    p: object, r: int, factors: Optional[SvdFactors], options: SampleOptions, svd_options: dict
):
    a = as_dense(p)
    if factors is None:
        factors = svd(a, **svd_options)
    plan = plan_for(factors, r)

    def draw(seed: int, index: int) -> np.ndarray:
        sample = draw_sample(plan, sample_rng(seed, index), options)
        return a if plan.keeps_all else compose(factors, sample)

    return a, draw


def empirical_unbiasedness(
    p: object,
    r: int,
    samples: int,
    seed: int,
    *,
    factors: Optional[SvdFactors] = None,
    options: SampleOptions = SampleOptions(),
    sigmas: float = DEFAULT_SIGMAS,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    threads: int = 1,
    progress: bool = False,
    **svd_options,
) -> UnbiasednessEstimate:
    """Entrywise deviation of the sample mean of Q from P, with standard errors."""
    if samples < MIN_UNBIASEDNESS_SAMPLES:
        raise ValueError(f"need at least {MIN_UNBIASEDNESS_SAMPLES} samples, got {samples}")
    a, draw = _sampler(p, r, factors, options, svd_options)

    def worker(bounds: tuple[int, int]) -> WelfordAccumulator:
        acc = WelfordAccumulator()
        for index in range(*bounds):
            acc.update(draw(seed, index))
        return acc

    acc = _run_chunks(
        worker,
        samples,
        chunk_size=chunk_size,
        threads=threads,
        progress=progress,
        desc="unbiasedness",
    )
    mean = acc.mean
    errors = acc.standard_error
    deviation = np.abs(mean - a)
    atol = 1e-12 * max(1.0, float(np.max(np.abs(a))))
    exceedances = int(np.count_nonzero(deviation > sigmas * errors + atol))
    return UnbiasednessEstimate(
        mean=mean,
        standard_errors=errors,
        deviation=deviation,
        max_deviation=float(np.max(deviation)),
        exceedances=exceedances,
        samples=samples,
        confidence_sigmas=sigmas,
    )


def empirical_distortion(
    p: object,
    r: int,
    samples: int,
    seed: int,
    *,
    factors: Optional[SvdFactors] = None,
    options: SampleOptions = SampleOptions(),
    sigmas: float = DEFAULT_SIGMAS,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    threads: int = 1,
    progress: bool = False,
    **svd_options,
) -> MonteCarloEstimate:
    """Mean of ||P - Q||_F^2 over seeded samples, with its standard error."""
    if samples < 1:
        raise ValueError("need at least one sample")
    a, draw = _sampler(p, r, factors, options, svd_options)

    def worker(bounds: tuple[int, int]) -> WelfordAccumulator:
        acc = WelfordAccumulator()
        for index in range(*bounds):
            acc.update(frobenius_dist_sq(a, draw(seed, index)))
        return acc

    acc = _run_chunks(
        worker,
        samples,
        chunk_size=chunk_size,
        threads=threads,
        progress=progress,
        desc="distortion",
    )
    error = float(acc.standard_error)
    return MonteCarloEstimate(
        mean=float(acc.mean),
        standard_error=error,
        confidence_radius=sigmas * error,
        samples=samples,
    )


def distortion_report(
    p: object,
    r: int,
    samples: int,
    seed: int,
    *,
    factors: Optional[SvdFactors] = None,
    sigmas: float = DEFAULT_SIGMAS,
    chunk_size: int = DEFAULT_CHUNK_SIZE,
    threads: int = 1,
    progress: bool = False,
    **svd_options,
) -> DistortionReport:
    """Closed form, lower bound and truncation baseline, plus Monte-Carlo estimates.

    Raises ``VerificationError`` when the closed form misses the lower bound.
    """
    a = as_dense(p)
    if factors is None:
        factors = svd(a, **svd_options)
    report = verify_optimality(factors.leading_values.tolist(), r)
    if samples == 0:
        return report

    common = dict(
        factors=factors, sigmas=sigmas, chunk_size=chunk_size, threads=threads, progress=progress
    )
    estimate = empirical_distortion(a, r, samples, seed, **common)
    update = {
        "empirical_mean_distortion": estimate.mean,
        "confidence_radius": estimate.confidence_radius,
        "samples": samples,
        "seed": seed,
        "empirical_within_radius": estimate.covers(report.expected_distortion),
    }
    if samples >= MIN_UNBIASEDNESS_SAMPLES:
        bias = empirical_unbiasedness(a, r, samples, seed, **common)
        update["max_mean_deviation"] = bias.max_deviation
        update["mean_exceedances"] = bias.exceedances
    return report.model_copy(update=update)
