"""Matrix file parsing and deterministic JSON/CSV emission."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math

import numpy as np


class ParseError(ValueError):
    pass


def _finite_pair(item, where: str) -> complex:
    if (
        not isinstance(item, (list, tuple))
        or len(item) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in item)
    ):
        raise ParseError(f"{where}: expected a [re, im] pair, got {item!r}")
    re, im = float(item[0]), float(item[1])
    if not (math.isfinite(re) and math.isfinite(im)):
        raise ParseError(f"{where}: non-finite entry")
    return complex(re, im)


def matrix_from_entries(entries, n: int | None = None, label: str = "entries") -> np.ndarray:
    if not isinstance(entries, list) or not entries:
        raise ParseError(f"{label}: expected a non-empty list of rows")
    size = len(entries) if n is None else n
    if len(entries) != size:
        raise ParseError(f"{label}: {len(entries)} rows but n = {size}")
    out = np.zeros((size, size), dtype=np.complex128)
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != size:
            raise ParseError(f"{label}: row {i} does not have {size} entries")
        for j, item in enumerate(row):
            out[i, j] = _finite_pair(item, f"{label}[{i}][{j}]")
    return out


def parse_matrix_json(text: str) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise ParseError("matrix document needs 'n' and 'entries'")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"'n' must be a positive integer, got {n!r}")
    return matrix_from_entries(doc["entries"], n)


def parse_matrix_csv_reim(text: str) -> np.ndarray:
    """Rows of 2n columns: re_1, im_1, ..., re_n, im_n."""
    rows = [r for r in csv.reader(io.StringIO(text)) if r and any(c.strip() for c in r)]
    n = len(rows)
    if n == 0:
        raise ParseError("empty CSV matrix")
    out = np.zeros((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        if len(row) != 2 * n:
            raise ParseError(f"CSV row {i} has {len(row)} columns, expected {2 * n}")
        try:
            vals = [float(c) for c in row]
        except ValueError:
            raise ParseError(f"CSV row {i} has a non-numeric field") from None
        if not all(math.isfinite(v) for v in vals):
            raise ParseError(f"CSV row {i} has a non-finite field")
        out[i] = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return out


def read_matrix(path: str, fmt: str = "json") -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    if fmt == "json":
        return parse_matrix_json(text)
    if fmt == "csv-reim":
        return parse_matrix_csv_reim(text)
    raise ParseError(f"unknown format {fmt!r}")


def parse_complex(text: str) -> complex:
    """Accepts Python-style literals with ``i`` or ``j``: '1', '-0.5+2i', '3j'."""
    try:
        z = complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ValueError(f"not a complex number: {text!r}") from None
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite value: {text!r}")
    return z


# -- deterministic output ----------------------------------------------------

def fmt_float(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if not math.isfinite(x):
        raise ValueError("cannot serialize a non-finite float")
    s = format(x, ".17g")
    # keep floats recognisable as floats after a JSON round trip
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def to_plain(obj):
    """Convert numpy scalars/arrays and complex numbers into JSON-ready values."""
    if isinstance(obj, np.ndarray):
        return [to_plain(x) for x in obj.tolist()] if obj.ndim else to_plain(obj.item())
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(x) for x in obj]
    return obj


def _emit(obj, indent: int, depth: int) -> str:
    pad = " " * (indent * (depth + 1))
    end = " " * (indent * depth)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(k, ensure_ascii=True)}: {_emit(obj[k], indent, depth + 1)}"
            for k in sorted(obj)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        # short numeric lists ([re, im] pairs, matrix rows) stay on one line
        if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj) or all(
            isinstance(x, list) and all(isinstance(y, (int, float)) for y in x) for x in obj
        ):
            return "[" + ", ".join(_emit(x, indent, depth + 1) for x in obj) + "]"
        return "[\n" + ",\n".join(pad + _emit(x, indent, depth + 1) for x in obj) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Canonical JSON: sorted keys, 17 significant digits, trailing newline."""
    return _emit(to_plain(obj), indent, 0) + "\n"


def matrix_document(m) -> dict:
    m = np.asarray(m, dtype=np.complex128)
    return {"n": int(m.shape[0]), "entries": to_plain(m)}


def digest(m) -> str:
    return hashlib.sha256(dumps(matrix_document(m)).encode("ascii")).hexdigest()


def sweep_csv(energies, powers) -> str:
    lines = ["E,P"] + [f"{fmt_float(e)},{fmt_float(p)}" for e, p in zip(energies, powers)]
    return "\n".join(lines) + "\n"
