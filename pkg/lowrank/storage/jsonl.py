"""Per-sample records of an ``approx`` run, one JSON object per line."""

from pathlib import Path
from typing import Iterable, Iterator

from lowrank.models.records import SampleRecord


def write_records(path: Path, records: Iterable[SampleRecord]) -> int:
    """Replace ``path`` with one line per record, in iteration order. Returns the count."""
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for count, record in enumerate(records, start=1):
            f.write(record.model_dump_json() + "\n")
    return count


def read_records(path: Path) -> Iterator[SampleRecord]:
    with open(path, "r", encoding="utf-8") as f:
        for number, line in enumerate(f, start=1):
            if line.strip():
                try:
                    yield SampleRecord.model_validate_json(line)
                except ValueError as exc:
                    raise ValueError(f"{path}:{number}: invalid sample record") from exc
