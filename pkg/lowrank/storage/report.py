"""Deterministic JSON rendering for reports and run metadata."""

from __future__ import annotations

import json
import math
from pathlib import Path

from pydantic import BaseModel

FLOAT_DIGITS = 17


def _render(value, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return json.dumps(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"cannot serialize non-finite number {value!r}")
        return format(value, f".{FLOAT_DIGITS}g")
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {_render(v, indent, level + 1)}" for k, v in value.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(value, (list, tuple)):
        if not value:
            return "[]"
        items = [f"{pad}{_render(v, indent, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(data: BaseModel | dict, indent: int = 2) -> str:
    """JSON text with floats at 17 significant digits and a trailing newline."""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode="json", by_alias=True)
    return _render(data, indent, 0) + "\n"


def write_json(path: Path, data: BaseModel | dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(dumps(data))
