"""Exact JSON encoding: integers become decimal strings, fractions become
``{"num": ..., "den": ...}`` pairs. Nothing is ever rounded to a float."""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Any


def to_exact(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return {"num": str(obj.numerator), "den": str(obj.denominator)}
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in exact output")
    if hasattr(obj, "to_dict"):
        return to_exact(obj.to_dict())
    if dataclasses.is_dataclass(obj):
        return to_exact(dataclasses.asdict(obj))
    if isinstance(obj, dict):
        return {str(k): to_exact(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_exact(v) for v in items]
    raise TypeError(f"cannot encode {type(obj).__name__} exactly")


def dumps(obj: Any) -> str:
    return json.dumps(to_exact(obj), indent=2, sort_keys=True)


def from_exact(value: Any) -> Any:
    """Decode a value produced by :func:`to_exact` (num/den pairs and digit strings)."""
    if isinstance(value, dict):
        if set(value) == {"num", "den"}:
            return Fraction(int(value["num"]), int(value["den"]))
        return {k: from_exact(v) for k, v in value.items()}
    if isinstance(value, list):
        return [from_exact(v) for v in value]
    if isinstance(value, str) and value.lstrip("-").isdigit():
        return int(value)
    return value
