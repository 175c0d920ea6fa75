"""Property sweeps run by ``lowrank selftest``."""

from __future__ import annotations

import logging
from typing import Callable

import numpy as np

from lowrank.errors import LowrankError
from lowrank.models.report import SuiteResult
from lowrank.oracle.bounds import (
    expected_distortion_closed_form,
    lower_bound,
    realization_gap,
    verify_optimality,
)
from lowrank.oracle.enumerate import enumerate_outcomes, expected_distortion_from_outcomes
from lowrank.sampler.plan import build_plan

logger = logging.getLogger(__name__)

FULL_COUNTS = {
    "bound_match": 1000,
    "oracle_equivalence": 1000,
    "per_realization": 200,
    "monotonicity": 200,
}
QUICK_COUNTS = {name: max(10, count // 10) for name, count in FULL_COUNTS.items()}


def random_spectrum(rng: np.random.Generator, max_components: int) -> list[float]:
    """Descending positive values; one draw in four uses small integers to force ties."""
    n = int(rng.integers(1, max_components + 1))
    if rng.random() < 0.25:
        values = rng.integers(1, 5, size=n).astype(float)
    else:
        values = rng.uniform(0.05, 10.0, size=n)
    return sorted(values.tolist(), reverse=True)


def _close(a: float, b: float, tol: float) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def golden_example() -> SuiteResult:
    problems = []
    plan = build_plan([4.0, 1.0], 1)
    if plan.heavy_count != 0 or plan.fill_value != 5.0:
        problems.append(f"plan k={plan.heavy_count} c={plan.fill_value}")
    if plan.inclusion_probabilities != (0.8, 0.2):
        problems.append(f"probabilities {plan.inclusion_probabilities}")
    table = enumerate_outcomes(plan)
    masses = {o.index_set: o.probability for o in table.outcomes}
    if set(masses) != {(0,), (1,)} or not (
        abs(masses[(0,)] - 0.8) <= 1e-12 and abs(masses[(1,)] - 0.2) <= 1e-12
    ):
        problems.append(f"outcome table {masses}")
    for name, value in (
        ("closed form", expected_distortion_closed_form([4.0, 1.0], 1)),
        ("lower bound", lower_bound([4.0, 1.0], 1)),
    ):
        if abs(value - 8.0) > 1e-12:
            problems.append(f"{name} {value!r} != 8")
    return SuiteResult(
        name="golden_example", checked=1, failures=len(problems), detail="; ".join(problems)
    )


def bound_match(rng: np.random.Generator, count: int) -> SuiteResult:
    checked = failures = 0
    first = ""
    for _ in range(count):
        d = random_spectrum(rng, 12)
        for r in range(1, len(d) + 1):
            checked += 1
            try:
                verify_optimality(d, r)
            except LowrankError as exc:
                failures += 1
                first = first or f"d={d} r={r}: {exc}"
    return SuiteResult(name="bound_match", checked=checked, failures=failures, detail=first)


def _random_plan(rng: np.random.Generator, max_light: int):
    while True:
        d = random_spectrum(rng, max_light)
        if len(d) < 2:
            continue
        r = int(rng.integers(1, len(d)))
        plan = build_plan(d, r)
        if not plan.is_deterministic:
            return plan


def oracle_equivalence(rng: np.random.Generator, count: int) -> SuiteResult:
    failures = 0
    first = ""
    for _ in range(count):
        plan = _random_plan(rng, 10)
        d, r = plan.singular_values, plan.rank
        table = enumerate_outcomes(plan)
        problems = []
        if abs(table.total_probability() - 1.0) > 1e-12:
            problems.append(f"mass {table.total_probability()!r}")
        if any(len(o.index_set) != plan.light_budget for o in table.outcomes):
            problems.append("cardinality")
        marginals = table.marginals(plan.n_components)
        for i, p in zip(plan.light_indices, plan.inclusion_probabilities):
            if abs(marginals[i] - p) > 1e-12:
                problems.append(f"marginal {i}: {marginals[i]!r} vs {p!r}")
        expected = expected_distortion_from_outcomes(table, plan)
        closed = expected_distortion_closed_form(d, r)
        if not _close(expected, closed, 1e-10):
            problems.append(f"enumerated {expected!r} vs closed form {closed!r}")
        if problems:
            failures += 1
            first = first or f"d={list(d)} r={r}: {', '.join(problems)}"
    return SuiteResult(name="oracle_equivalence", checked=count, failures=failures, detail=first)


def per_realization(rng: np.random.Generator, count: int) -> SuiteResult:
    checked = failures = 0
    first = ""
    for _ in range(count):
        plan = _random_plan(rng, 12)
        c = plan.fill_value
        want = (plan.n_components - plan.rank) * c * c
        for outcome in enumerate_outcomes(plan).outcomes:
            checked += 1
            got = realization_gap(plan, outcome.index_set)
            if not _close(got, want, 1e-10):
                failures += 1
                d = list(plan.singular_values)
                first = first or f"d={d} I={outcome.index_set}: {got!r} vs {want!r}"
    return SuiteResult(name="per_realization", checked=checked, failures=failures, detail=first)


def monotonicity(rng: np.random.Generator, count: int) -> SuiteResult:
    failures = 0
    first = ""
    for _ in range(count):
        d = random_spectrum(rng, 12)
        values = [expected_distortion_closed_form(d, r) for r in range(1, len(d) + 1)]
        increasing = any(b > a + 1e-10 * max(1.0, a) for a, b in zip(values, values[1:]))
        if increasing or values[-1] != 0.0:
            failures += 1
            first = first or f"d={d}: {values}"
    return SuiteResult(name="monotonicity", checked=count, failures=failures, detail=first)


def run_selftest(seed: int = 0, quick: bool = False) -> list[SuiteResult]:
    counts = QUICK_COUNTS if quick else FULL_COUNTS
    suites: list[tuple[str, Callable[[np.random.Generator, int], SuiteResult]]] = [
        ("bound_match", bound_match),
        ("oracle_equivalence", oracle_equivalence),
        ("per_realization", per_realization),
        ("monotonicity", monotonicity),
    ]
    results = [golden_example()]
    for offset, (name, suite) in enumerate(suites):
        rng = np.random.default_rng([seed, offset])
        results.append(suite(rng, counts[name]))
        logger.info(
            "Suite %s: %d checked, %d failed", name, results[-1].checked, results[-1].failures
        )
    return results
