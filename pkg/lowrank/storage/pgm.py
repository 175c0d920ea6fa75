"""Grayscale PGM images (ASCII P2 and binary P5)."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from lowrank.errors import MatrixFormatError

MAX_MAXVAL = 65535
_WHITESPACE = b" \t\r\n\v\f"


class _HeaderReader:
    def __init__(self, data: bytes, path: str):
        self.data = data
        self.pos = 0
        self.path = path

    def error(self, message: str, offset: int | None = None) -> MatrixFormatError:
        where = self.pos if offset is None else offset
        return MatrixFormatError(message, path=self.path, offset=where)

    def skip_space(self) -> None:
        data = self.data
        while self.pos < len(data):
            ch = data[self.pos : self.pos + 1]
            if ch == b"#":
                end = data.find(b"\n", self.pos)
                self.pos = len(data) if end < 0 else end + 1
            elif ch in _WHITESPACE:
                self.pos += 1
            else:
                break

    def token(self) -> tuple[bytes, int]:
        self.skip_space()
        start = self.pos
        data = self.data
        while self.pos < len(data) and data[self.pos : self.pos + 1] not in _WHITESPACE + b"#":
            self.pos += 1
        if start == self.pos:
            raise self.error("unexpected end of file")
        return data[start : self.pos], start

    def integer(self, what: str) -> int:
        tok, start = self.token()
        if not tok.isdigit():
            raise self.error(f"expected {what}, found {tok[:16]!r}", start)
        return int(tok)


def parse_pgm(data: bytes, path: str = "<bytes>") -> tuple[np.ndarray, int, str]:
    """Parse PGM bytes. Returns the matrix (float64), maxval and magic ('P2' or 'P5')."""
    reader = _HeaderReader(data, path)
    magic, _ = reader.token()
    if magic not in (b"P2", b"P5"):
        raise reader.error(f"not a grayscale PGM (magic {magic[:8]!r})", 0)
    width = reader.integer("width")
    height = reader.integer("height")
    maxval_offset = reader.pos
    maxval = reader.integer("maxval")
    if width < 1 or height < 1:
        raise reader.error(f"image size {width}x{height} is empty", maxval_offset)
    if not 1 <= maxval <= MAX_MAXVAL:
        raise reader.error(f"maxval {maxval} outside [1, {MAX_MAXVAL}]", maxval_offset)
    count = width * height

    if magic == b"P5":
        # Exactly one whitespace byte separates the header from the raster.
        start = reader.pos + 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        needed = count * dtype.itemsize
        raster = data[start : start + needed]
        if len(raster) < needed:
            raise reader.error(
                f"raster truncated: expected {needed} bytes, found {len(raster)}",
                start + len(raster),
            )
        values = np.frombuffer(raster, dtype=dtype).astype(np.float64)
        over = np.flatnonzero(values > maxval)
        if over.size:
            raise reader.error(
                f"sample value exceeds maxval {maxval}", start + int(over[0]) * dtype.itemsize
            )
    else:
        values = np.empty(count, dtype=np.float64)
        for n in range(count):
            value = reader.integer("sample")
            if value > maxval:
                raise reader.error(f"sample value {value} exceeds maxval {maxval}")
            values[n] = value
    return values.reshape(height, width), maxval, magic.decode("ascii")


def read_pgm(path: Path) -> tuple[np.ndarray, int, str]:
    with open(path, "rb") as f:
        return parse_pgm(f.read(), str(path))


def quantize(matrix: np.ndarray, maxval: int) -> np.ndarray:
    """Clamp to [0, maxval] and round half to even."""
    real = np.real(np.asarray(matrix))
    return np.rint(np.clip(real, 0, maxval)).astype(np.int64)


def format_pgm(matrix: np.ndarray, maxval: int, magic: str = "P5") -> bytes:
    pixels = quantize(matrix, maxval)
    height, width = pixels.shape
    header = f"{magic}\n{width} {height}\n{maxval}\n".encode("ascii")
    if magic == "P5":
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        return header + pixels.astype(dtype).tobytes()
    if magic == "P2":
        lines = [" ".join(str(v) for v in row) for row in pixels.tolist()]
        return header + ("\n".join(lines) + "\n").encode("ascii")
    raise ValueError(f"unsupported PGM variant {magic!r}")


def write_pgm(path: Path, matrix: np.ndarray, maxval: int, magic: str = "P5") -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "wb") as f:
        f.write(format_pgm(matrix, maxval, magic))
