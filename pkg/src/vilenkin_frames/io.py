"""Signal files and deterministic JSON output.

A signal file is a JSON object ``{"p", "m", "n", "values": [[re, im], ...]}``
with values in time index order and an optional ``"label"``.  Reports are
written with a fixed key order and every float printed with 17 significant
digits, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import SchemaError
from .group import ModelConfig
from .walsh import Signal

_KEYS = {"p", "m", "n", "values", "label"}


def _format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x!r}")
    if x == 0.0:
        return "0.0"
    text = format(x, ".17g")
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def _emit(obj, indent: int, level: int, out: list) -> None:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None:
        out.append("null")
    elif isinstance(obj, (bool, np.bool_)):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(_format_float(float(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(f"{pad}{json.dumps(str(k))}: ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        # short rows of scalars stay on one line
        if all(not isinstance(v, (dict, list, tuple, np.ndarray)) for v in items):
            parts = []
            for v in items:
                sub: list = []
                _emit(v, indent, level + 1, sub)
                parts.append("".join(sub))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(items):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON text ending in a newline."""
    out: list = []
    _emit(obj, indent, 0, out)
    out.append("\n")
    return "".join(out)


def signal_to_dict(f: Signal, label: str | None = None) -> dict:
    cfg = f.cfg
    doc = {"p": cfg.p, "m": cfg.m, "n": cfg.n}
    if label is not None:
        doc["label"] = label
    doc["values"] = [[float(v.real), float(v.imag)] for v in f.values]
    return doc


def _int_field(doc: dict, key: str) -> int:
    if key not in doc:
        raise SchemaError(f"missing field {key!r}")
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"field {key!r} must be an integer")
    return v


def signal_from_dict(doc, tol_zero: float | None = None) -> tuple[Signal, str | None]:
    if not isinstance(doc, dict):
        raise SchemaError("signal file must hold a JSON object")
    unknown = set(doc) - _KEYS
    if unknown:
        raise SchemaError(f"unknown fields: {sorted(unknown)}")
    p, m, n = (_int_field(doc, k) for k in ("p", "m", "n"))
    try:
        cfg = ModelConfig(p, m, n) if tol_zero is None else ModelConfig(p, m, n, tol_zero=tol_zero)
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise SchemaError("field 'label' must be a string")
    values = doc.get("values")
    if not isinstance(values, list):
        raise SchemaError("field 'values' must be a list of [re, im] pairs")
    if len(values) != cfg.size:
        raise SchemaError(f"expected {cfg.size} values for p={p}, m={m}, n={n}, got {len(values)}")
    arr = np.empty(cfg.size, dtype=np.complex128)
    for i, pair in enumerate(values):
        if not isinstance(pair, list) or len(pair) != 2:
            raise SchemaError(f"values[{i}] must be a [re, im] pair")
        for x in pair:
            if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
                raise SchemaError(f"values[{i}] must hold two finite numbers")
        arr[i] = complex(pair[0], pair[1])
    return Signal(cfg, arr), label


def loads_signal(text: str, tol_zero: float | None = None) -> tuple[Signal, str | None]:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return signal_from_dict(doc, tol_zero)


def _reject_constant(name: str):
    raise SchemaError(f"non-finite constant {name} is not allowed")


def read_signal(path, tol_zero: float | None = None) -> tuple[Signal, str | None]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return loads_signal(text, tol_zero)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def write_signal(path, f: Signal, label: str | None = None) -> None:
    Path(path).write_text(dumps(signal_to_dict(f, label)), encoding="utf-8")
