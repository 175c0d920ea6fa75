import numpy as np
import pytest

from lowrank.sampler import draw_uniform, sample_rng, segment_order
from lowrank.sampler.rng import MAX_SEED


def _ks_statistic(x: np.ndarray) -> float:
    x = np.sort(x)
    n = x.size
    upper = np.arange(1, n + 1) / n - x
    lower = x - np.arange(n) / n
    return float(max(upper.max(), lower.max()))


def test_same_seed_and_index_repeat():
    first = [draw_uniform(sample_rng(7, i)) for i in range(5)]
    second = [draw_uniform(sample_rng(7, i)) for i in range(5)]
    assert first == second


def test_streams_differ_by_index_and_seed():
    assert draw_uniform(sample_rng(7, 0)) != draw_uniform(sample_rng(7, 1))
    assert draw_uniform(sample_rng(7, 0)) != draw_uniform(sample_rng(8, 0))


def test_stream_does_not_depend_on_other_samples():
    rng = sample_rng(3, 41)
    expected = [draw_uniform(rng) for _ in range(3)]
    for i in range(41):
        draw_uniform(sample_rng(3, i))
    rng = sample_rng(3, 41)
    assert [draw_uniform(rng) for _ in range(3)] == expected


def test_full_seed_range_accepted():
    assert 0.0 <= draw_uniform(sample_rng(MAX_SEED, 0)) < 1.0


@pytest.mark.parametrize("seed, index", [(-1, 0), (MAX_SEED + 1, 0), (0, -1)])
def test_invalid_seed_or_index(seed, index):
    with pytest.raises(ValueError):
        sample_rng(seed, index)


# Asymptotic 1% critical value of the Kolmogorov-Smirnov statistic, times sqrt(n).
KS_CRITICAL_1PCT = 1.628


def test_first_draws_across_streams_are_uniform():
    n = 100_000
    draws = np.array([draw_uniform(sample_rng(11, i)) for i in range(n)])
    assert draws.min() >= 0.0
    assert draws.max() < 1.0
    assert _ks_statistic(draws) < KS_CRITICAL_1PCT / np.sqrt(n)


def test_draws_within_one_stream_are_uniform():
    n = 100_000
    rng = sample_rng(12, 0)
    draws = np.array([draw_uniform(rng) for _ in range(n)])
    assert _ks_statistic(draws) < KS_CRITICAL_1PCT / np.sqrt(n)


def test_segment_order_is_permutation():
    order = segment_order(sample_rng(5, 0), 9)
    assert sorted(order) == list(range(9))
    assert all(isinstance(i, int) for i in order)
