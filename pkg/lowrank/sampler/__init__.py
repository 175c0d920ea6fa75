from lowrank.sampler.pipeline import (
    SampleOptions,
    compose,
    draw_sample,
    plan_for,
    realize,
    sample_low_rank,
    sample_many,
)
from lowrank.sampler.plan import build_plan, heavy_split
from lowrank.sampler.rng import draw_uniform, sample_rng, segment_order
from lowrank.sampler.systematic import assemble_sample, segment_layout, systematic_select

__all__ = [
    "SampleOptions",
    "assemble_sample",
    "build_plan",
    "compose",
    "draw_sample",
    "draw_uniform",
    "heavy_split",
    "plan_for",
    "realize",
    "sample_low_rank",
    "sample_many",
    "sample_rng",
    "segment_layout",
    "segment_order",
    "systematic_select",
]
