"""File formats: JSON documents for complexes, double complexes and matrices.

Matrix entries are strings holding an integer or a "p/q" exact rational;
plain JSON integers are accepted on input.  Serialization always writes
lowest-terms rationals with the sign on the numerator, so round-trips are
bit-stable.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, Tuple

from .complexes import (
    CochainComplex,
    ComplexError,
    IntChainComplex,
    cochain_complex,
    int_chain_complex,
    validate_complex,
)
from .qlinalg import RatMatrix
from .spectral import DoubleComplex, DoubleComplexError, double_complex
from .zlinalg import IntMatrix


class DocumentError(ValueError):
    """Raised on malformed or invalid input documents."""


def _parse_rational(raw, where: str) -> Fraction:
    if isinstance(raw, bool):
        raise DocumentError(f"malformed rational at {where}: {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            f = Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise DocumentError(f"malformed rational at {where}: {raw!r}") from None
        return f
    raise DocumentError(f"malformed rational at {where}: {raw!r}")


def _parse_matrix(raw, rows: int, cols: int, where: str) -> RatMatrix:
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise DocumentError(f"matrix at {where} must be an array of arrays")
    if len(raw) != rows or any(len(r) != cols for r in raw):
        got = f"{len(raw)}x{len(raw[0]) if raw else 0}"
        raise DocumentError(
            f"shape mismatch at {where}: got {got}, expected {rows}x{cols}")
    data = [[_parse_rational(x, f"{where}[{i}][{j}]")
             for j, x in enumerate(row)] for i, row in enumerate(raw)]
    return RatMatrix.from_rows(data, cols)


def _parse_int_matrix(raw, rows: int, cols: int, where: str) -> IntMatrix:
    M = _parse_matrix(raw, rows, cols, where)
    ints = []
    for i in range(rows):
        for j, f in enumerate(M.row(i)):
            if f.denominator != 1:
                raise DocumentError(
                    f"non-integer entry at {where}[{i}][{j}]: {f}")
            ints.append(f.numerator)
    return IntMatrix(rows, cols, tuple(ints))


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None


def _format_rational(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _dims_field(doc, key="dims") -> Dict[int, int]:
    raw = doc.get(key)
    if not isinstance(raw, dict):
        raise DocumentError(f"missing or malformed '{key}' map")
    out = {}
    for k, v in raw.items():
        try:
            deg = int(k)
        except ValueError:
            raise DocumentError(f"malformed degree key {k!r} in '{key}'") from None
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DocumentError(f"malformed dimension at {key}[{k}]: {v!r}")
        out[deg] = v
    return out


def parse_cochain_document(text: str) -> CochainComplex:
    """Parse a rational cochain complex document and validate d o d = 0."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    min_deg = doc.get("min_deg", 0)
    if not isinstance(min_deg, int) or isinstance(min_deg, bool):
        raise DocumentError("'min_deg' must be an integer")
    dims = _dims_field(doc)
    diffs = {}
    for k, raw in (doc.get("differentials") or {}).items():
        try:
            deg = int(k)
        except ValueError:
            raise DocumentError(f"malformed degree key {k!r} in 'differentials'") \
                from None
        diffs[deg] = _parse_matrix(raw, dims.get(deg + 1, 0), dims.get(deg, 0),
                                   f"differentials[{k}]")
    try:
        C = cochain_complex(min_deg, dims, diffs)
    except ComplexError as e:
        raise DocumentError(str(e)) from None
    if not validate_complex(C):
        bad = next(n for n in C.degrees()
                   if not (C.differential(n + 1) @ C.differential(n)).is_zero())
        raise DocumentError(f"d o d != 0 at degree {bad}")
    return C


def parse_chain_document(text: str) -> IntChainComplex:
    """Parse an integer chain complex document (homological grading)."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    min_deg = doc.get("min_deg", 0)
    dims = _dims_field(doc)
    diffs = {}
    for k, raw in (doc.get("differentials") or {}).items():
        try:
            deg = int(k)
        except ValueError:
            raise DocumentError(f"malformed degree key {k!r} in 'differentials'") \
                from None
        diffs[deg] = _parse_int_matrix(raw, dims.get(deg - 1, 0),
                                       dims.get(deg, 0),
                                       f"differentials[{k}]")
    try:
        C = int_chain_complex(min_deg, dims, diffs)
    except ComplexError as e:
        raise DocumentError(str(e)) from None
    if not validate_complex(C):
        bad = next(n for n in C.degrees()
                   if any(e != 0 for e in
                          (C.differential(n) @ C.differential(n + 1)).entries))
        raise DocumentError(f"d o d != 0 at degree {bad}")
    return C


def _cell_key(k: str, where: str) -> Tuple[int, int]:
    parts = k.split(",")
    if len(parts) != 2:
        raise DocumentError(f"malformed cell key {k!r} in '{where}'")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise DocumentError(f"malformed cell key {k!r} in '{where}'") from None


def parse_double_complex_document(text: str) -> DoubleComplex:
    """Parse a double complex document and validate all its invariants."""
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    for key in ("max_r", "max_c"):
        if not isinstance(doc.get(key), int) or isinstance(doc.get(key), bool):
            raise DocumentError(f"missing or malformed '{key}'")
    max_r, max_c = doc["max_r"], doc["max_c"]
    raw_dims = doc.get("dims")
    if not isinstance(raw_dims, dict):
        raise DocumentError("missing or malformed 'dims' map")
    dims = {}
    for k, v in raw_dims.items():
        rs = _cell_key(k, "dims")
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise DocumentError(f"malformed dimension at dims[{k}]: {v!r}")
        dims[rs] = v

    def maps(field, shape):
        out = {}
        for k, raw in (doc.get(field) or {}).items():
            r, s = _cell_key(k, field)
            tr, ts = shape(r, s)
            out[(r, s)] = _parse_matrix(raw, dims.get((tr, ts), 0),
                                        dims.get((r, s), 0), f"{field}[{k}]")
        return out

    horiz = maps("horiz", lambda r, s: (r + 1, s))
    vert = maps("vert", lambda r, s: (r, s + 1))
    try:
        return double_complex(max_r, max_c, dims, horiz, vert)
    except DoubleComplexError as e:
        raise DocumentError(str(e)) from None


def parse_int_matrix_document(text: str) -> IntMatrix:
    """Parse a matrix document: either a bare array of arrays or an object
    with a 'matrix' field."""
    doc = _load_json(text)
    if isinstance(doc, dict):
        doc = doc.get("matrix")
    if not isinstance(doc, list):
        raise DocumentError("matrix document must be an array of arrays "
                            "or an object with a 'matrix' field")
    rows = len(doc)
    cols = len(doc[0]) if rows and isinstance(doc[0], list) else 0
    return _parse_int_matrix(doc, rows, cols, "matrix")


def serialize_cochain(C: CochainComplex) -> str:
    doc = {
        "min_deg": C.min_deg,
        "dims": {str(n): C.dim(n) for n in sorted(C.dims)},
        "differentials": {
            str(n): [[_format_rational(f) for f in M.row(i)]
                     for i in range(M.rows)]
            for n, M in sorted(C.differentials.items())
        },
    }
    return json.dumps(doc, indent=1, sort_keys=True)


def serialize_double_complex(K: DoubleComplex) -> str:
    doc = {
        "max_r": K.max_r,
        "max_c": K.max_c,
        "dims": {f"{r},{s}": d for (r, s), d in sorted(K.dims.items())},
        "horiz": {f"{r},{s}": [[_format_rational(f) for f in M.row(i)]
                               for i in range(M.rows)]
                  for (r, s), M in sorted(K.horiz.items())},
        "vert": {f"{r},{s}": [[_format_rational(f) for f in M.row(i)]
                              for i in range(M.rows)]
                 for (r, s), M in sorted(K.vert.items())},
    }
    return json.dumps(doc, indent=1, sort_keys=True)
