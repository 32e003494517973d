"""Deterministic text serialization helpers.

Floats are written with 17 significant digits, which round-trips every
double exactly, and the JSON emitter preserves dict insertion order, so
identical inputs always produce identical bytes.
"""

from __future__ import annotations

import json
import math

from .errors import ValidationError


def fmt_float(value: float) -> str:
    """17-significant-digit decimal form of a finite double."""
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"cannot serialize non-finite value {value!r}")
    text = format(value, ".17g")
    if "." not in text and "e" not in text and "E" not in text:
        text += ".0"
    return text


def dumps_json(obj) -> str:
    """Serialize nested dicts/lists/numbers/strings with fmt_float floats."""
    pieces: list[str] = []
    _emit(obj, pieces)
    return "".join(pieces) + "\n"


def _emit(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(fmt_float(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, value) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _emit(value, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, value in enumerate(obj):
            if i:
                out.append(", ")
            _emit(value, out)
        out.append("]")
    else:
        # numpy scalars and arrays reduce to the cases above
        if hasattr(obj, "tolist"):
            _emit(obj.tolist(), out)
        else:
            raise ValidationError(f"cannot serialize object of type {type(obj).__name__}")


def write_text(path, text: str) -> None:
    """Write UTF-8 text with \\n line endings regardless of platform."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
