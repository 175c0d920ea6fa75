from lowrank.models.plan import LowRankSample, SamplingPlan
from lowrank.models.records import RunMetadata, SampleRecord
from lowrank.models.report import (
    DistortionReport,
    MonteCarloEstimate,
    Outcome,
    OutcomeTable,
    SuiteResult,
    UnbiasednessEstimate,
)

__all__ = [
    "DistortionReport",
    "LowRankSample",
    "MonteCarloEstimate",
    "Outcome",
    "OutcomeTable",
    "RunMetadata",
    "SampleRecord",
    "SamplingPlan",
    "SuiteResult",
    "UnbiasednessEstimate",
]
