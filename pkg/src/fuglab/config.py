"""Single source of numerical tolerances.

Every engine reads its defaults from ``tolerances.json`` shipped with the
package, and every CLI manifest embeds the effective values.
"""

from __future__ import annotations

import json
from importlib import resources
from types import MappingProxyType


def _load():
    text = resources.files("fuglab").joinpath("tolerances.json").read_text(encoding="utf-8")
    return json.loads(text)


_RAW = _load()
TOLERANCES = MappingProxyType(_RAW)
CONFIG_VERSION = _RAW["version"]


def tol(name: str) -> float:
    return TOLERANCES[name]


def resolve_budget(budget) -> int:
    """Turn a budget preset name (``desk``) or an integer-like value into an int."""
    if isinstance(budget, int):
        return budget
    if budget in TOLERANCES["budgets"]:
        return int(TOLERANCES["budgets"][budget])
    try:
        return int(budget)
    except (TypeError, ValueError):
        raise ValueError(f"unknown budget {budget!r}") from None


def snapshot() -> dict:
    return json.loads(json.dumps(_RAW))
