"""Utility functions shared by the wreath modules."""

import json
import math
from dataclasses import asdict, is_dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Tuple


def safe_serialize(obj: Any) -> Any:
    """
    Convert report objects to JSON-serializable types.

    Args:
        obj: Any Python object

    Returns:
        A serializable version of the object; sets become sorted lists and
        fractions become "p/q" strings so that output is reproducible
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, float, str)):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, Fraction):
        return str(obj)
    if is_dataclass(obj) and not isinstance(obj, type):
        return safe_serialize(asdict(obj))
    if isinstance(obj, (set, frozenset)):
        return sorted((safe_serialize(item) for item in obj), key=repr)
    if isinstance(obj, (list, tuple)):
        return [safe_serialize(item) for item in obj]
    if isinstance(obj, dict):
        return {str(k): safe_serialize(v) for k, v in obj.items()}
    return str(obj)


def dump_json(obj: Any) -> str:
    """Serialize with sorted keys so identical inputs give identical bytes."""
    return json.dumps(safe_serialize(obj), indent=2, sort_keys=True, ensure_ascii=False)


def ceil_sqrt(m: int) -> int:
    """Smallest n with n * n >= m."""
    if m <= 0:
        return 0
    n = math.isqrt(m)
    return n if n * n == m else n + 1


def split_generator(name: str) -> Tuple[str, bool]:
    """Split ``a-1`` into (``a``, True) and ``a`` into (``a``, False)."""
    if name.endswith("-1"):
        return name[:-2], True
    if name.endswith("⁻¹"):
        return name[:-2], True
    return name, False

