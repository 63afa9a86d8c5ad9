"""Reading spectra and matrices; writing matrices that round-trip exactly."""

from __future__ import annotations

import json
import os
import re
import tempfile
from pathlib import Path

import numpy as np

from .errors import ParseError

_SPLIT = re.compile(r"[\s,]+")


def parse_spectrum_text(text: str) -> list[float]:
    """Numbers separated by whitespace, commas or newlines; ``#`` starts a comment.

    A JSON array is accepted too.
    """
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            data = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON spectrum: {exc}") from exc
        if not isinstance(data, list) or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in data):
            raise ParseError("JSON spectrum must be an array of numbers")
        return [float(v) for v in data]
    values = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for tok in _SPLIT.split(line.strip()):
            if not tok:
                continue
            try:
                values.append(float(tok))
            except ValueError as exc:
                raise ParseError(f"not a number: {tok!r}") from exc
    return values


def read_spectrum(source: str) -> list[float]:
    """Inline list, or ``@path`` to read it from a file."""
    if source.startswith("@"):
        try:
            text = Path(source[1:]).read_text()
        except OSError as exc:
            raise ParseError(f"cannot read spectrum file: {exc}") from exc
        return parse_spectrum_text(text)
    return parse_spectrum_text(source)


def format_csv(M: np.ndarray) -> str:
    return "".join(",".join(format(float(x), ".17g") for x in row) + "\n" for row in M)


def format_json(M: np.ndarray) -> str:
    return json.dumps({"n": int(M.shape[0]), "rows": [[float(x) for x in row] for row in M]}) + "\n"


def format_matrix(M: np.ndarray, fmt: str = "csv") -> str:
    if fmt == "csv":
        return format_csv(M)
    if fmt == "json":
        return format_json(M)
    raise ValueError(f"unknown format {fmt!r}")


def parse_matrix(text: str) -> np.ndarray:
    """Parse a CSV matrix or a ``{"n": ..., "rows": ...}`` JSON document."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
            rows = doc["rows"]
            M = np.array(rows, dtype=float)
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad JSON matrix: {exc}") from exc
        if "n" in doc and M.shape != (doc["n"], doc["n"]):
            raise ParseError(f"declared n={doc['n']} but rows have shape {M.shape}")
    else:
        rows = []
        for line in stripped.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError as exc:
                raise ParseError(f"bad CSV row {line!r}") from exc
        if not rows or len({len(r) for r in rows}) != 1:
            raise ParseError("CSV matrix must have rows of equal length")
        M = np.array(rows, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ParseError(f"matrix must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ParseError("matrix has non-finite entries")
    return M


def read_matrix(path: str | os.PathLike) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read matrix file: {exc}") from exc
    return parse_matrix(text)


def write_atomic(path: str | os.PathLike, text: str) -> None:
    """Write via a temporary file in the same directory, then rename."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
