import numpy as np

from lowrank.oracle import run_selftest
from lowrank.oracle.selftest import QUICK_COUNTS, golden_example, random_spectrum


def test_golden_suite_passes():
    result = golden_example()
    assert result.passed, result.detail


def test_quick_selftest_passes():
    results = run_selftest(seed=0, quick=True)
    assert [r.name for r in results] == [
        "golden_example",
        "bound_match",
        "oracle_equivalence",
        "per_realization",
        "monotonicity",
    ]
    for result in results:
        assert result.passed, f"{result.name}: {result.detail}"
    counts = {r.name: r.checked for r in results}
    assert counts["oracle_equivalence"] == QUICK_COUNTS["oracle_equivalence"]
    assert counts["bound_match"] >= QUICK_COUNTS["bound_match"]


def test_selftest_is_seeded():
    first = run_selftest(seed=3, quick=True)
    second = run_selftest(seed=3, quick=True)
    assert first == second


def test_random_spectrum_is_descending_and_positive():
    rng = np.random.default_rng(0)
    for _ in range(100):
        d = random_spectrum(rng, 8)
        assert 1 <= len(d) <= 8
        assert all(x > 0 for x in d)
        assert d == sorted(d, reverse=True)
