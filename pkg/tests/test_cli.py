import json
import time

import numpy as np
import pytest
from click.testing import CliRunner

from lowrank import cli
from lowrank.errors import SvdConvergenceError
from lowrank.models import SuiteResult
from lowrank.storage import read_records
from lowrank.storage.pgm import format_pgm


@pytest.fixture(autouse=True)
def _quiet_logs(monkeypatch):
    monkeypatch.setenv("LOWRANK_LOG_LEVEL", "WARNING")


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def golden_csv(tmp_path):
    path = tmp_path / "p.csv"
    path.write_text("4,0\n0,1\n")
    return path


def _run(runner, *args):
    return runner.invoke(cli.main, [str(a) for a in args])


class TestApprox:
    def test_writes_average_metadata_and_records(self, runner, golden_csv, tmp_path):
        out = tmp_path / "out"
        result = _run(runner, "approx", "-i", golden_csv, "-r", 1, "-m", 5, "--seed", 3, "--out", out)
        assert result.exit_code == 0, result.output
        assert "k=0 c=5.0 N=2" in result.output

        metadata = json.loads((out / "metadata.json").read_text())
        assert metadata["schema"] == 1
        assert metadata["format"] == "csv-real"
        assert metadata["heavy_count"] == 0
        assert metadata["fill_value"] == 5
        assert set(metadata["distortions"]) <= {2, 32}

        records = list(read_records(out / "samples.jsonl"))
        assert [r.index for r in records] == list(range(5))
        for record in records:
            assert record.distortion == (2.0 if record.index_set == (0,) else 32.0)
        assert (out / "average.csv").exists()
        assert not (out / "sample_0000.csv").exists()

    def test_same_seed_gives_identical_files(self, runner, golden_csv, tmp_path):
        for name in ("a", "b"):
            result = _run(
                runner, "approx", "-i", golden_csv, "-r", 1, "-m", 8, "--seed", 11,
                "--emit-samples", "--out", tmp_path / name,
            )
            assert result.exit_code == 0, result.output
        names = sorted(p.name for p in (tmp_path / "a").iterdir())
        assert "sample_0007.csv" in names
        for name in names:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_emitted_samples_are_one_of_two_matrices(self, runner, golden_csv, tmp_path):
        out = tmp_path / "out"
        _run(runner, "approx", "-i", golden_csv, "-r", 1, "-m", 4, "--emit-samples", "--out", out)
        for i in range(4):
            text = (out / f"sample_{i:04d}.csv").read_text()
            assert text in ("5.0,0.0\n0.0,0.0\n", "0.0,0.0\n0.0,5.0\n")

    def test_full_rank_reproduces_input(self, runner, golden_csv, tmp_path):
        out = tmp_path / "out"
        result = _run(runner, "approx", "-i", golden_csv, "-r", 2, "-m", 3, "--out", out)
        assert result.exit_code == 0, result.output
        assert (out / "average.csv").read_text() == "4.0,0.0\n0.0,1.0\n"
        assert json.loads((out / "metadata.json").read_text())["distortions"] == [0, 0, 0]

    def test_permuted_segments_are_recorded_and_reproducible(self, runner, tmp_path):
        path = tmp_path / "d.csv"
        values = [5, 4, 3, 2, 1]
        rows = [",".join(str(v) if i == j else "0" for j, v in enumerate(values)) for i in range(5)]
        path.write_text("\n".join(rows) + "\n")
        outputs = []
        for name in ("a", "b"):
            out = tmp_path / name
            result = _run(
                runner, "approx", "-i", path, "-r", 2, "-m", 12, "--seed", 4,
                "--permute-segments", "--out", out,
            )
            assert result.exit_code == 0, result.output
            outputs.append((out / "samples.jsonl").read_bytes())
        assert outputs[0] == outputs[1]
        metadata = json.loads((tmp_path / "a" / "metadata.json").read_text())
        assert metadata["permute_segments"] is True
        records = list(read_records(tmp_path / "a" / "samples.jsonl"))
        assert all(len(r.index_set) == 2 for r in records)

    def test_large_image_demo(self, runner, tmp_path):
        rng = np.random.default_rng(512)
        ramp = np.add.outer(np.arange(512) * 0.25, np.arange(512) * 0.2)
        image = np.clip(ramp + rng.integers(0, 64, size=(512, 512)), 0, 255)
        source = tmp_path / "big.pgm"
        source.write_bytes(format_pgm(image, 255, "P5"))
        out = tmp_path / "out"
        start = time.perf_counter()
        result = _run(runner, "approx", "-i", source, "-r", 30, "-m", 16, "--out", out)
        elapsed = time.perf_counter() - start
        assert result.exit_code == 0, result.output
        assert elapsed < 30.0
        metadata = json.loads((out / "metadata.json").read_text())
        assert metadata["numerical_rank"] >= 100
        assert metadata["average_distortion"] < float(np.median(metadata["distortions"]))

    def test_image_round_trip(self, runner, tmp_path):
        image = np.add.outer(np.arange(8) * 20.0, np.arange(8) * 10.0)
        source = tmp_path / "img.pgm"
        source.write_bytes(format_pgm(image, 255, "P5"))
        out = tmp_path / "out"
        result = _run(runner, "approx", "-i", source, "-r", 1, "-m", 4, "--out", out)
        assert result.exit_code == 0, result.output
        assert (out / "average.pgm").read_bytes().startswith(b"P5\n8 8\n255\n")
        assert json.loads((out / "metadata.json").read_text())["format"] == "pgm"


class TestStats:
    def test_golden_json_without_samples(self, runner, golden_csv):
        result = _run(runner, "stats", "-i", golden_csv, "-r", 1, "-m", 0, "--json")
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["schema"] == 1
        assert report["expected_distortion"] == 8
        assert report["lower_bound"] == 8
        assert report["truncation_baseline"] == 1
        assert report["empirical_mean_distortion"] is None

    def test_empirical_fields(self, runner, golden_csv):
        result = _run(runner, "stats", "-i", golden_csv, "-r", 1, "-m", 2000, "--threads", 2, "--json")
        assert result.exit_code == 0, result.output
        report = json.loads(result.output)
        assert report["samples"] == 2000
        assert report["empirical_within_radius"] is True
        assert report["mean_exceedances"] == 0

    def test_thread_count_does_not_change_report(self, runner, tmp_path, monkeypatch):
        monkeypatch.setenv("LOWRANK_CHUNK_SIZE", "256")
        path = tmp_path / "r.csv"
        rng = np.random.default_rng(3)
        rows = rng.normal(size=(6, 5)).tolist()
        path.write_text("\n".join(",".join(repr(x) for x in row) for row in rows) + "\n")
        outputs = []
        for threads in (1, 4):
            result = _run(
                runner, "stats", "-i", path, "-r", 2, "-m", 3000, "--seed", 9,
                "--threads", threads, "--json",
            )
            assert result.exit_code == 0, result.output
            outputs.append(json.loads(result.output))
        assert outputs[0] == outputs[1]
        assert outputs[0]["empirical_mean_distortion"] == pytest.approx(
            outputs[1]["empirical_mean_distortion"], rel=1e-12
        )

    def test_text_output(self, runner, golden_csv):
        result = _run(runner, "stats", "-i", golden_csv, "-r", 1, "-m", 0)
        assert result.exit_code == 0, result.output
        assert "expected_distortion:" in result.output
        assert "truncation_baseline:" in result.output


class TestOracle:
    def test_golden_table(self, runner, golden_csv):
        result = _run(runner, "oracle", "-i", golden_csv, "-r", 1)
        assert result.exit_code == 0, result.output
        lines = result.output.splitlines()
        assert lines[1].startswith("{0}")
        assert lines[2].startswith("{1}")
        assert lines[1].split()[-1] == "2"
        assert lines[2].split()[-1] == "32"
        assert lines[-1].startswith("total probability: 1")

    def test_json(self, runner, golden_csv):
        result = _run(runner, "oracle", "-i", golden_csv, "-r", 1, "--json")
        assert result.exit_code == 0, result.output
        table = json.loads(result.output)
        assert [o["index_set"] for o in table["outcomes"]] == [[0], [1]]
        assert table["outcomes"][0]["probability"] == pytest.approx(0.8)

    def test_too_many_light_components_is_usage_error(self, runner, tmp_path):
        path = tmp_path / "eye.csv"
        path.write_text("\n".join(",".join("1" if i == j else "0" for j in range(30)) for i in range(30)))
        result = _run(runner, "oracle", "-i", path, "-r", 2)
        assert result.exit_code == 1
        assert "enumeration limit" in result.output


class TestSelftest:
    def test_quick_passes(self, runner):
        result = _run(runner, "selftest", "--quick")
        assert result.exit_code == 0, result.output
        assert "All suites passed." in result.output

    def test_failure_exits_with_verification_code(self, runner, monkeypatch):
        monkeypatch.setattr(
            cli, "run_selftest", lambda seed, quick: [SuiteResult(name="x", checked=1, failures=1)]
        )
        result = _run(runner, "selftest")
        assert result.exit_code == 3
        assert "FAIL" in result.output


class TestExitCodes:
    def test_missing_rank_is_usage_error(self, runner, golden_csv):
        assert _run(runner, "approx", "-i", golden_csv).exit_code == 1

    def test_zero_rank_is_usage_error(self, runner, golden_csv):
        assert _run(runner, "stats", "-i", golden_csv, "-r", 0).exit_code == 1

    def test_missing_file_is_io_error(self, runner, tmp_path):
        assert _run(runner, "stats", "-i", tmp_path / "nope.csv", "-r", 1).exit_code == 2

    def test_malformed_csv_is_io_error(self, runner, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3\n")
        result = _run(runner, "oracle", "-i", path, "-r", 1)
        assert result.exit_code == 2
        assert "line 2" in result.output

    def test_help(self, runner):
        result = _run(runner, "--help")
        assert result.exit_code == 0
        assert "approx" in result.output
        assert "numerical failure" in result.output

    def test_svd_failure_has_its_own_code(self, runner, golden_csv, monkeypatch):
        def fail(*args, **kwargs):
            raise SvdConvergenceError(60, 1e-3)

        monkeypatch.setattr(cli, "svd", fail)
        result = _run(runner, "stats", "-i", golden_csv, "-r", 1, "-m", 0)
        assert result.exit_code == cli.EXIT_NUMERICAL == 4
        assert "did not converge" in result.output


def test_info(runner):
    result = _run(runner, "info")
    assert result.exit_code == 0
    assert "SVD backend:" in result.output
