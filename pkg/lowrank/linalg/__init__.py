from lowrank.linalg.dense import (
    as_dense,
    complete_basis,
    frobenius_dist_sq,
    frobenius_norm_sq,
    tail_energy,
)
from lowrank.linalg.factors import SvdFactors
from lowrank.linalg.jacobi import (
    reconstruct,
    singular_values,
    svd,
    truncate_rank,
    truncation_error_sq,
)

__all__ = [
    "SvdFactors",
    "as_dense",
    "complete_basis",
    "frobenius_dist_sq",
    "frobenius_norm_sq",
    "reconstruct",
    "singular_values",
    "svd",
    "tail_energy",
    "truncate_rank",
    "truncation_error_sq",
]
