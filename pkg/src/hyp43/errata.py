"""Access to the shipped erratum table (``data/errata.json``)."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

PAIR_FINITE_POWER = "pair-finite-power"
SPECTATOR_FAMILIES = "spectator-families"
TRIPLE_TAIL_POWER = "triple-tail-power"
TRIPLE_TAIL_HALF = "triple-tail-half"
TRIPLE_SPECTATOR_SIGN = "triple-spectator-sign"
QUAD_FINITE_FACTORIAL = "quad-finite-factorial"
QUAD_LOG1_POWER = "quad-log1-power"
QUAD_DPRIME_SIGN = "quad-dprime-sign"
QUAD_TAIL_FACTORIAL = "quad-tail-factorial"


@lru_cache(maxsize=1)
def load_errata() -> dict:
    text = resources.files("hyp43").joinpath("data/errata.json").read_text(encoding="utf-8")
    return json.loads(text)


def errata_entries() -> list[dict]:
    return list(load_errata()["entries"])


def selectable_ids() -> frozenset[str]:
    """Ids whose printed form can be requested via ``use_printed``."""
    return frozenset(e["id"] for e in errata_entries() if e["selectable"])


def check_ids(ids) -> frozenset[str]:
    ids = frozenset(ids or ())
    unknown = ids - selectable_ids()
    if unknown:
        raise ValueError(f"unknown or non-selectable erratum ids: {sorted(unknown)}")
    return ids


def format_errata() -> str:
    """Human-readable rendering used by ``hyp43 eval --explain``."""
    data = load_errata()
    lines = [data["description"], ""]
    for e in data["entries"]:
        lines.append(f"[{e['id']}] {e['expansion']} / {e['band']}  ({e['status']})")
        lines.append(f"    printed:     {e['printed']}")
        lines.append(f"    implemented: {e['implemented']}")
        lines.append(f"    note:        {e['note']}")
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
