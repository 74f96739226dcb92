"""JSON (de)serialization for all on-disk formats.

Rationals travel as strings "p/q" (or "p" when q = 1) so no consumer can
lose precision.  All emitters sort keys and entry lists, making output
byte-identical for identical inputs.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .linalg import RationalMatrix, vec


def rational_to_str(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def rational_from_str(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"expected rational string, got {s!r}")
    return Fraction(s.strip())


def vector_to_json(v) -> list:
    return [rational_to_str(x) for x in v]


def vector_from_json(data) -> tuple:
    return vec(rational_from_str(x) for x in data)


def matrix_to_json(m: RationalMatrix) -> dict:
    entries = [[i, j, rational_to_str(v)] for (i, j), v in sorted(m.entries.items())]
    return {"rows": m.rows, "cols": m.cols, "entries": entries}


def matrix_from_json(data) -> RationalMatrix:
    try:
        rows, cols = int(data["rows"]), int(data["cols"])
        entries = {(int(i), int(j)): rational_from_str(s) for i, j, s in data["entries"]}
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad matrix object: {exc}") from exc
    return RationalMatrix(rows, cols, entries)


def sparse_vector_from_json(data, length: int) -> tuple:
    """{"index": "p/q", ...} with string keys -> dense tuple."""
    out = [Fraction(0)] * length
    for k, s in data.items():
        i = int(k)
        if not 0 <= i < length:
            raise ValueError(f"sparse vector index {i} out of range")
        out[i] = rational_from_str(s)
    return tuple(out)


def sparse_vector_to_json(v) -> dict:
    return {str(i): rational_to_str(x) for i, x in enumerate(v) if x != 0}


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_path(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)
