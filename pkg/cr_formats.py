"""Serialization helpers: complex numbers as [re, im], algebra files, line literals."""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Any, Iterable

import numpy as np

from cr_errors import FormatError


def encode_complex(value: Any) -> list[float]:
    number = complex(value)
    # Fold -0.0 into 0.0.
    return [float(number.real) + 0.0, float(number.imag) + 0.0]


def decode_complex(raw: Any) -> complex:
    if isinstance(raw, (int, float)):
        return complex(float(raw), 0.0)
    try:
        re_part, im_part = raw
        return complex(float(re_part), float(im_part))
    except (TypeError, ValueError) as exc:
        raise FormatError(f"Expected [re, im] pair, got {raw!r}.") from exc


def encode_array(values: Any) -> Any:
    """Recursively encode an array-like of complex numbers as nested [re, im] pairs."""
    arr = np.asarray(values)
    if arr.ndim == 0:
        return encode_complex(arr.item())
    return [encode_array(item) for item in arr]


def encode_real_array(values: Any) -> Any:
    return (np.asarray(values, dtype=float) + 0.0).tolist()


def decode_matrix(rows: Iterable[Iterable[Any]]) -> np.ndarray:
    try:
        return np.array([[decode_complex(entry) for entry in row] for row in rows], dtype=complex)
    except TypeError as exc:
        raise FormatError("Matrix rows must be lists of [re, im] pairs.") from exc


def parse_line_literal(values: Iterable[Any]) -> np.ndarray:
    """Six reals [re_a, im_a, re_b, im_b, re_c, im_c] -> complex 3-vector."""
    try:
        reals = [float(item) for item in values]
    except (TypeError, ValueError) as exc:
        raise FormatError("Line literal must be six real numbers.") from exc
    if len(reals) != 6:
        raise FormatError(f"Line literal must have six reals, got {len(reals)}.")
    return np.array(
        [complex(reals[0], reals[1]), complex(reals[2], reals[3]), complex(reals[4], reals[5])]
    )


def line_literal(vector: Any) -> list[float]:
    vec = np.asarray(vector, dtype=complex).reshape(-1)
    out: list[float] = []
    for entry in vec:
        out.extend(encode_complex(entry))
    return out


# ------------------------
# Algebra files
# ------------------------


def load_algebra_file(path: str | Path, *, tolerances=None):
    from algebra_core import construct_algebra
    from cr_config import DEFAULT_TOLERANCES

    file_path = Path(path)
    try:
        raw = json.loads(file_path.read_text(encoding="utf-8"))
    except FileNotFoundError as exc:
        raise FormatError(f"Algebra file not found: {file_path}") from exc
    except OSError as exc:
        raise FormatError(f"Cannot read algebra file {file_path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"Algebra file is not valid JSON: {exc}") from exc

    if not isinstance(raw, dict) or "brackets" not in raw:
        raise FormatError("Algebra file needs a 'brackets' list.")
    rep = raw.get("rep")
    matrix_rep = [decode_matrix(mat) for mat in rep] if rep else None
    return construct_algebra(
        raw["brackets"],
        raw.get("basis", ["A", "B", "C"]),
        matrix_rep,
        name=str(raw.get("name") or file_path.stem),
        tolerances=tolerances or DEFAULT_TOLERANCES,
    )


def dump_report(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


# ------------------------
# Point dumps
# ------------------------

CSV_COLUMNS = ("index", "re_a", "im_a", "re_b", "im_b", "re_c", "im_c")


def write_points_csv(path: str | Path, points: Any) -> int:
    """Write homogeneous points one per row as real/imaginary columns; returns the row count."""
    arr = np.atleast_2d(np.asarray(points, dtype=complex))
    file_path = Path(path)
    rows = 0
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with file_path.open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(CSV_COLUMNS[: 1 + 2 * arr.shape[1]])
            for index, point in enumerate(arr):
                writer.writerow([index, *(f"{value:.17g}" for value in line_literal(point))])
                rows += 1
    except OSError as exc:
        raise FormatError(
            f"Cannot write points to {file_path}: {exc.strerror or exc}",
            details={"path": str(file_path)},
        ) from exc
    return rows

