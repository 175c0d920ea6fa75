import sys
from pathlib import Path

import click

from lowrank.config import get_settings
from lowrank.errors import (
    LowrankError,
    MatrixFormatError,
    SamplingError,
    SvdConvergenceError,
    VerificationError,
)
from lowrank.linalg import frobenius_dist_sq, svd
from lowrank.models.records import RunMetadata, SampleRecord
from lowrank.oracle import distortion_report, enumerate_outcomes, run_selftest
from lowrank.sampler import SampleOptions, plan_for, sample_many
from lowrank.sampler.rng import MAX_SEED
from lowrank.storage import dumps, read_matrix, write_json, write_matrix, write_records
from lowrank.utils.logging import setup_logging

EXIT_USAGE = 1
EXIT_IO = 2
EXIT_VERIFICATION = 3
EXIT_NUMERICAL = 4


class LowrankGroup(click.Group):
    """Click group that maps failures onto the documented exit codes."""

    def main(self, args=None, prog_name=None, complete_var=None, standalone_mode=True, **extra):
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.UsageError as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.FileError as exc:
            exc.show()
            sys.exit(EXIT_IO)
        except click.ClickException as exc:
            exc.show()
            sys.exit(EXIT_USAGE)
        except click.Abort:
            click.echo("Aborted!", err=True)
            sys.exit(EXIT_USAGE)
        except VerificationError as exc:
            click.echo(f"Verification failed: {exc}", err=True)
            sys.exit(EXIT_VERIFICATION)
        except (MatrixFormatError, OSError) as exc:
            click.echo(f"Error: {exc}", err=True)
            sys.exit(EXIT_IO)
        except (SvdConvergenceError, SamplingError) as exc:
            click.echo(f"Numerical failure: {exc}", err=True)
            sys.exit(EXIT_NUMERICAL)
        except LowrankError as exc:
            click.echo(f"Error: {exc}", err=True)
            sys.exit(EXIT_NUMERICAL)
        if standalone_mode:
            sys.exit(rv if isinstance(rv, int) else 0)
        return rv


_input_option = click.option(
    "--input", "-i", "input_path", required=True, type=click.Path(dir_okay=False, path_type=Path),
    help="Matrix file (.csv or .pgm)",
)
_rank_option = click.option(
    "--rank", "-r", required=True, type=click.IntRange(min=1), help="Rank budget r"
)
_seed_option = click.option(
    "--seed", default=0, show_default=True, type=click.IntRange(0, MAX_SEED), help="Master seed"
)


@click.group(cls=LowrankGroup)
def main():
    """lowrank -- unbiased low-rank matrix sampling with minimum expected distortion.

    \b
    Exit codes:
      0  success
      1  usage error
      2  I/O or parse error
      3  verification failure (bound mismatch, self-test)
      4  numerical failure (SVD did not converge, broken sample)
    """
    pass


@main.command()
@_input_option
@_rank_option
@click.option(
    "--samples", "-m", default=16, show_default=True, type=click.IntRange(min=1),
    help="Number of samples M",
)
@_seed_option
@click.option(
    "--permute-segments", is_flag=True, help="Randomly permute the segment order per sample"
)
@click.option("--emit-samples", is_flag=True, help="Also write every sampled matrix")
@click.option("--out", "out_dir", default=None, type=click.Path(file_okay=False, path_type=Path),
              help="Output directory (default: settings output_dir)")
def approx(input_path, rank, samples, seed, permute_segments, emit_samples, out_dir):
    """Draw M unbiased rank-r approximations and their average."""
    settings = get_settings()
    logger = setup_logging(settings.log_level)

    source = read_matrix(input_path)
    out_dir = out_dir or settings.output_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    p = source.payload

    factors = svd(p, **settings.svd_options())
    plan = plan_for(factors, rank)
    options = SampleOptions(permute_segments=permute_segments)
    logger.info("Input %s: %dx%d, numerical rank %d", input_path, *p.shape, plan.n_components)

    total = None
    records = []
    width = max(4, len(str(samples - 1)))
    for index, (q, sample) in enumerate(sample_many(p, rank, seed, samples, options, factors)):
        total = q.copy() if total is None else total + q
        distortion = frobenius_dist_sq(p, q)
        records.append(
            SampleRecord(
                index=index,
                index_set=sample.index_set,
                uniform_draw=sample.uniform_draw,
                distortion=distortion,
            )
        )
        if emit_samples:
            write_matrix(out_dir / f"sample_{index:0{width}d}{source.suffix}", q, source)

    average = total / samples
    write_matrix(out_dir / f"average{source.suffix}", average, source)

    write_records(out_dir / "samples.jsonl", records)

    metadata = RunMetadata(
        input=str(input_path),
        format=source.format.value,
        rank=rank,
        numerical_rank=plan.n_components,
        heavy_count=plan.heavy_count,
        fill_value=plan.fill_value,
        seed=seed,
        samples=samples,
        permute_segments=permute_segments,
        distortions=tuple(r.distortion for r in records),
        average_distortion=frobenius_dist_sq(p, average),
    )
    write_json(out_dir / "metadata.json", metadata)

    click.echo(f"k={plan.heavy_count} c={plan.fill_value} N={plan.n_components}")
    click.echo(f"Wrote average of {samples} samples and run metadata to {out_dir}")


@main.command()
@_input_option
@_rank_option
@click.option("--samples", "-m", default=10_000, show_default=True, type=click.IntRange(min=0),
              help="Monte-Carlo sample count (0 skips the empirical estimates)")
@_seed_option
@click.option(
    "--threads", default=None, type=click.IntRange(min=1), help="Monte-Carlo worker threads"
)
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON")
def stats(input_path, rank, samples, seed, threads, as_json):
    """Closed-form distortion, lower bound, truncation baseline and Monte-Carlo estimates."""
    settings = get_settings()
    setup_logging(settings.log_level)

    source = read_matrix(input_path)
    factors = svd(source.payload, **settings.svd_options())
    report = distortion_report(
        source.payload,
        rank,
        samples,
        seed,
        factors=factors,
        sigmas=settings.confidence_sigmas,
        chunk_size=settings.chunk_size,
        threads=threads or settings.threads,
        progress=settings.show_progress,
    )

    if as_json:
        click.echo(dumps(report), nl=False)
        return
    for name, value in report.model_dump(by_alias=True).items():
        if value is not None:
            click.echo(f"{name + ':':28} {value}")


@main.command()
@_input_option
@_rank_option
@click.option("--json", "as_json", is_flag=True, help="Emit the table as JSON")
def oracle(input_path, rank, as_json):
    """Exact table of sampled index sets with their probabilities and errors."""
    settings = get_settings()
    setup_logging(settings.log_level)

    source = read_matrix(input_path)
    factors = svd(source.payload, **settings.svd_options())
    plan = plan_for(factors, rank)
    try:
        table = enumerate_outcomes(plan, limit=settings.enumerate_limit)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None

    if as_json:
        click.echo(dumps({"schema": 1, "rank": rank, **table.model_dump(mode="json")}), nl=False)
        return
    click.echo(f"{'index set':<24} {'probability':>22} {'distortion':>22}")
    for outcome in table.outcomes:
        label = "{" + ", ".join(str(i) for i in outcome.index_set) + "}"
        click.echo(f"{label:<24} {outcome.probability:>22.17g} {outcome.distortion:>22.17g}")
    click.echo(f"total probability: {table.total_probability():.17g}")


@main.command()
@click.option("--quick", is_flag=True, help="Reduced instance counts")
@_seed_option
def selftest(quick, seed):
    """Run the optimality and oracle property sweeps."""
    settings = get_settings()
    setup_logging(settings.log_level)

    results = run_selftest(seed=seed, quick=quick)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        click.echo(
            f"{status}  {result.name:<20} {result.checked:>6} checked, {result.failures} failed"
        )
        if result.detail:
            click.echo(f"      {result.detail}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise VerificationError(f"suites failed: {', '.join(failed)}")
    click.echo("All suites passed.")


@main.command()
def info():
    """Print configuration summary."""
    settings = get_settings()

    click.echo("lowrank configuration")
    click.echo("=" * 40)
    click.echo(f"Output directory:   {settings.output_dir}")
    click.echo(f"Log level:          {settings.log_level}")
    click.echo(f"SVD backend:        {settings.svd_backend}")
    click.echo(f"SVD tolerance:      {settings.svd_tol} ({settings.svd_max_sweeps} sweeps max)")
    click.echo(f"Rank tolerance:     {settings.rank_tol}")
    click.echo(f"Enumeration limit:  {settings.enumerate_limit} light components")
    click.echo(f"Confidence radius:  {settings.confidence_sigmas} standard errors")
    click.echo(f"Monte-Carlo chunks: {settings.chunk_size} samples, {settings.threads} threads")


if __name__ == "__main__":
    main()
