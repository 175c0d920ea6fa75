import numpy as np
import pytest

from lowrank.linalg import svd
from lowrank.oracle import distortion_report, empirical_distortion, empirical_unbiasedness
from lowrank.oracle.montecarlo import _chunks
from lowrank.sampler import SampleOptions, build_plan, draw_sample, sample_rng
from tests.matrices import random_matrix, with_spectrum

P = np.diag([4.0, 1.0])


def test_chunks_cover_range_in_order():
    assert _chunks(10, 4) == [(0, 4), (4, 8), (8, 10)]
    assert _chunks(0, 4) == []


def test_golden_empirical_distortion():
    m = 10_000
    estimate = empirical_distortion(P, 1, m, seed=0)
    # Distortion is 2 w.p. 0.8 and 32 w.p. 0.2: standard deviation 12.
    assert abs(estimate.mean - 8.0) <= 4 * 12 / np.sqrt(m)
    assert estimate.standard_error == pytest.approx(12 / np.sqrt(m), rel=0.05)
    assert estimate.covers(8.0)


def test_golden_distortion_at_full_sample_count():
    m = 100_000
    estimate = empirical_distortion(P, 1, m, seed=0)
    assert abs(estimate.mean - 8.0) <= 4 * 12 / np.sqrt(m)


def test_heavy_component_distortion_at_full_sample_count():
    m = 100_000
    estimate = empirical_distortion(np.diag([3.0, 2.0, 1.0]), 2, m, seed=1)
    # Distortion is 2 w.p. 2/3 and 8 w.p. 1/3: variance 8.
    assert abs(estimate.mean - 4.0) <= 4 * np.sqrt(8.0 / m)


def test_golden_outcome_frequencies():
    m = 100_000
    plan = build_plan([4.0, 1.0], 1)
    first = sum(draw_sample(plan, sample_rng(2, i)).index_set == (0,) for i in range(m))
    assert abs(first / m - 0.8) <= 4 * np.sqrt(0.8 * 0.2 / m)


def test_golden_mean_at_full_sample_count():
    result = empirical_unbiasedness(P, 1, 100_000, seed=3)
    assert result.mean[0, 1] == 0.0
    assert result.mean[1, 0] == 0.0
    # Each diagonal entry has per-sample variance 4.
    assert abs(result.mean[0, 0] - 4.0) <= 4 * 2 / np.sqrt(100_000)
    assert abs(result.mean[1, 1] - 1.0) <= 4 * 2 / np.sqrt(100_000)


def test_rotated_empirical_distortion(rng):
    a = with_spectrum([4.0, 1.0], rng, shape=(3, 2))
    estimate = empirical_distortion(a, 1, 4000, seed=5)
    assert abs(estimate.mean - 8.0) <= 4 * 12 / np.sqrt(4000)


def test_golden_unbiasedness():
    result = empirical_unbiasedness(P, 1, 2000, seed=1)
    assert result.exceedances == 0
    assert result.mean[0, 1] == 0.0
    assert result.mean[1, 0] == 0.0
    assert result.mean[0, 0] + result.mean[1, 1] == pytest.approx(5.0)


@pytest.mark.parametrize("shape, r", [((5, 4), 2), ((3, 6), 1)])
def test_unbiased_on_random_complex_matrix(shape, r, rng):
    a = random_matrix(*shape, rng)
    result = empirical_unbiasedness(a, r, 2000, seed=2, chunk_size=256)
    assert result.exceedances == 0
    assert result.mean.shape == a.shape


def test_unbiasedness_suite_of_random_complex_matrices():
    rng = np.random.default_rng(77)
    exceedances = 0
    for _ in range(20):
        rows, cols = (int(x) for x in rng.integers(2, 17, size=2))
        r = int(rng.integers(1, min(rows, cols) + 1))
        a = random_matrix(rows, cols, rng)
        result = empirical_unbiasedness(a, r, 20_000, seed=int(rng.integers(2**32)))
        exceedances += result.exceedances
    assert exceedances <= 2


def test_unbiased_with_permuted_segments(rng):
    a = with_spectrum([5.0, 4.0, 3.0, 2.0, 1.0], rng)
    result = empirical_unbiasedness(
        a, 2, 2000, seed=3, options=SampleOptions(permute_segments=True)
    )
    assert result.exceedances == 0


def test_unbiasedness_needs_enough_samples():
    with pytest.raises(ValueError, match="at least 100"):
        empirical_unbiasedness(P, 1, 50, seed=0)


def test_results_do_not_depend_on_thread_count(rng):
    a = random_matrix(6, 5, rng)
    factors = svd(a)
    one = empirical_distortion(a, 2, 700, seed=4, factors=factors, chunk_size=64, threads=1)
    four = empirical_distortion(a, 2, 700, seed=4, factors=factors, chunk_size=64, threads=4)
    assert one == four
    bias_one = empirical_unbiasedness(a, 2, 300, seed=4, factors=factors, chunk_size=64)
    bias_four = empirical_unbiasedness(a, 2, 300, seed=4, factors=factors, chunk_size=64, threads=4)
    np.testing.assert_array_equal(bias_one.mean, bias_four.mean)


def test_report_without_samples():
    report = distortion_report(P, 1, 0, 0)
    assert report.expected_distortion == pytest.approx(8.0, abs=1e-12)
    assert report.lower_bound == pytest.approx(8.0, abs=1e-12)
    assert report.truncation_baseline == 1.0
    assert report.samples == 0
    assert report.empirical_mean_distortion is None


def test_report_with_samples():
    report = distortion_report(P, 1, 2000, 7, threads=2, chunk_size=300)
    assert report.samples == 2000
    assert report.seed == 7
    assert report.empirical_within_radius is True
    assert report.mean_exceedances == 0
    assert abs(report.empirical_mean_distortion - 8.0) <= report.confidence_radius + 1e-12


def test_report_below_unbiasedness_threshold_skips_mean_check():
    report = distortion_report(P, 1, 20, 7)
    assert report.samples == 20
    assert report.max_mean_deviation is None
    assert report.mean_exceedances is None
