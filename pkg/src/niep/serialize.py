"""JSON encodings of spectra, matrices and certificates.

Numbers travel as strings: "p/q" in rational mode and Python float reprs in
float mode, so nothing is lost on a round trip.
"""

from __future__ import annotations

import json
import re

from .errors import InputError
from .matrix import Matrix
from .scalars import RATIONAL, Backend, backend_named

__all__ = [
    "format_scalar",
    "encode_value",
    "parse_spectrum",
    "matrix_to_json",
    "matrix_from_json",
    "encode_trace",
    "dumps",
]


def format_scalar(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def encode_value(z):
    """Real scalars become a string, complex ones a [re, im] pair of strings."""
    im = getattr(z, "imag", 0)
    if im:
        return [format_scalar(z.real), format_scalar(im)]
    return format_scalar(z.real if hasattr(z, "real") and not isinstance(z, float) else z)


def _entry(item, backend: Backend):
    if isinstance(item, (list, tuple)):
        if len(item) != 2:
            raise InputError(f"complex entries must be [re, im] pairs, got {item!r}")
        return backend.complex(*item)
    if isinstance(item, bool) or not isinstance(item, (int, float, str)):
        raise InputError(f"unsupported spectrum entry {item!r}")
    return backend.scalar(item)


def parse_spectrum(text_or_obj, backend: Backend = RATIONAL) -> list:
    """Raw value list from ``{"lambda": [[re, im], ...]}`` or a shorthand ``[re, ...]``."""
    obj = text_or_obj
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
    if isinstance(obj, dict):
        if "lambda" not in obj:
            raise InputError('spectrum object needs a "lambda" key')
        obj = obj["lambda"]
    if not isinstance(obj, list) or not obj:
        raise InputError("spectrum must be a nonempty JSON list")
    try:
        return [_entry(item, backend) for item in obj]
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad spectrum entry: {exc}") from None


def encode_trace(steps) -> list:
    def enc(v):
        if isinstance(v, dict):
            return {k: enc(x) for k, x in v.items()}
        if isinstance(v, (list, tuple)):
            return [enc(x) for x in v]
        if isinstance(v, (str, bool, int)) or v is None:
            return v
        return encode_value(v)

    return [enc(step) for step in steps]


def matrix_to_json(m: Matrix, theorem: str | None = None, steps=None) -> dict:
    out = {
        "order": m.n,
        "entries": [[format_scalar(x) for x in row] for row in m.rows],
        "backend": m.backend.name,
    }
    if m.row_sum is not None:
        out["row_sum"] = format_scalar(m.row_sum)
    if theorem is not None:
        out["certificate"] = {"theorem": theorem, "steps": encode_trace(steps or [])}
    return out


def matrix_from_json(obj) -> Matrix:
    """Inverse of :func:`matrix_to_json`; validates the schema."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise InputError(f"malformed JSON: {exc}") from None
    if isinstance(obj, list):
        obj = {"entries": obj}
    if not isinstance(obj, dict) or "entries" not in obj:
        raise InputError('matrix JSON needs an "entries" list')
    entries = obj["entries"]
    if not isinstance(entries, list) or not entries or not all(isinstance(r, list) for r in entries):
        raise InputError("entries must be a nonempty list of rows")
    n = len(entries)
    if any(len(r) != n for r in entries):
        raise InputError("matrix must be square")
    if "order" in obj and obj["order"] != n:
        raise InputError(f"order {obj['order']} does not match {n} rows")
    try:
        backend = backend_named(obj.get("backend", "rational"))
        rows = [[backend.scalar(x) for x in r] for r in entries]
        row_sum = obj.get("row_sum")
        return Matrix.from_rows(rows, backend, row_sum=None if row_sum is None else backend.scalar(row_sum))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(f"bad matrix entry: {exc}") from None


_FLAT_LIST = re.compile(r"\[\s+([^\[\]{}]*?)\s+\]")


def dumps(obj) -> str:
    """Indented JSON with innermost lists (matrix rows, pairs) kept on one line."""
    text = json.dumps(obj, indent=2, ensure_ascii=False)
    text = _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    return text + "\n"
