"""Canonical JSON serialization shared by the scene-spec and frames formats.

Canonical means: sorted object keys, compact separators, and floats written
with 17 significant digits so parse(serialize(x)) recovers every double
bit-for-bit.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .errors import DomainError


def _write(value: Any, out: list[str]) -> None:
    if value is None or isinstance(value, bool):
        raise DomainError(f"unsupported value in canonical document: {value!r}")
    if isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"non-finite number in canonical document: {value!r}")
        if value == 0.0 and math.copysign(1.0, value) < 0.0:
            # ".17g" would emit "-0", which JSON readers treat as int 0,
            # dropping the sign on the way back.
            out.append("-0.0")
        else:
            out.append(format(value, ".17g"))
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=True))
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if i:
                out.append(",")
            if not isinstance(key, str):
                raise DomainError(f"non-string key in canonical document: {key!r}")
            out.append(json.dumps(key, ensure_ascii=True))
            out.append(":")
            _write(value[key], out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _write(item, out)
        out.append("]")
    else:
        raise DomainError(f"unsupported type in canonical document: {type(value).__name__}")


def dumps_canonical(value: Any) -> bytes:
    """Serialize nested dicts/lists/numbers/strings to canonical JSON bytes."""
    out: list[str] = []
    _write(value, out)
    out.append("\n")
    return "".join(out).encode("utf-8")
