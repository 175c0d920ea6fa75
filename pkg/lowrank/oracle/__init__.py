from lowrank.oracle.bounds import (
    expected_distortion_closed_form,
    lower_bound,
    realization_gap,
    shifted_target,
    truncation_baseline,
    verify_optimality,
)
from lowrank.oracle.enumerate import (
    breakpoints,
    enumerate_outcomes,
    expected_distortion_from_outcomes,
    outcome_distortion,
)
from lowrank.oracle.montecarlo import (
    distortion_report,
    empirical_distortion,
    empirical_unbiasedness,
)
from lowrank.oracle.selftest import run_selftest
from lowrank.oracle.welford import WelfordAccumulator

__all__ = [
    "WelfordAccumulator",
    "breakpoints",
    "distortion_report",
    "empirical_distortion",
    "empirical_unbiasedness",
    "enumerate_outcomes",
    "expected_distortion_closed_form",
    "expected_distortion_from_outcomes",
    "lower_bound",
    "outcome_distortion",
    "realization_gap",
    "run_selftest",
    "shifted_target",
    "truncation_baseline",
    "verify_optimality",
]
