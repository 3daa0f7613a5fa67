"""Deterministic text output shared by the CSV/JSON writers."""

from __future__ import annotations

import json
import math

import numpy as np


def fmt(v: float) -> str:
    """Fixed 12-significant-digit rendering (``-0`` becomes ``0``)."""
    v = float(v)
    if not math.isfinite(v):
        raise ValueError(f"cannot serialize non-finite value {v!r}")
    s = f"{v:.12g}"
    return "0" if s == "-0" else s


def dumps(obj, indent: int = 2) -> str:
    """JSON with sorted keys and every float passed through :func:`fmt`."""
    return _render(obj, indent, 0) + "\n"


def _render(obj, indent, level) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_render(obj[k], indent, level + 1)}"
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        if all(not isinstance(x, (dict, list, tuple, np.ndarray)) for x in seq):
            return "[" + ", ".join(_render(x, indent, level + 1) for x in seq) + "]"
        items = [pad + _render(x, indent, level + 1) for x in seq]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
