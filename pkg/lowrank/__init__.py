"""lowrank -- unbiased rank-constrained matrix sampling with minimum expected distortion."""

__version__ = "0.1.0"
