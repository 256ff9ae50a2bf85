"""Seeded random parameter suites for verification.

Parameters are drawn on a 0.001 grid and stored as decimal strings, so a
suite is exactly reproducible at any precision and round-trips through JSON.
"""

from __future__ import annotations

import cmath
import random
from dataclasses import dataclass

from .patterns import ParameterSet

# minimum distance from an integer for differences that must stay generic
SEPARATION = 0.05

PATTERN_GAPS = {
    "pair": [(0,), (1,), (2,), (5,)],
    "triple": [(0, 0), (0, 1), (1, 0), (1, 2), (2, 3)],
    "quad": [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (2, 1, 3)],
}


@dataclass(frozen=True)
class Case:
    id: str
    pattern: str
    params: ParameterSet
    z: str

    def to_json(self) -> dict:
        return {"id": self.id, "pattern": self.pattern, "a": list(self.params.a), "b": list(self.params.b), "z": self.z}

    @classmethod
    def from_json(cls, data: dict, index: int = 0) -> Case:
        return cls(
            id=str(data.get("id", f"case-{index:03d}")),
            pattern=str(data.get("pattern", "")),
            params=ParameterSet(tuple(str(x) for x in data["a"]), tuple(str(x) for x in data["b"])),
            z=str(data["z"]),
        )


def _frac_distance(x: float) -> float:
    return abs(x - round(x))


def _draw(rng: random.Random, lo: float, hi: float) -> float:
    return round(rng.uniform(lo, hi), 3)


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _separated(x: float, others) -> bool:
    return all(_frac_distance(x - o) >= SEPARATION for o in others)


def _draw_separated(rng, lo, hi, others) -> float:
    while True:
        x = _draw(rng, lo, hi)
        if _separated(x, others):
            return x


def random_upper(rng: random.Random, kind: str, gaps=None) -> list[float]:
    """Upper parameters with the requested integer-gap structure."""
    if kind == "generic":
        out: list[float] = []
        while len(out) < 4:
            out.append(_draw_separated(rng, 0.15, 2.5, out))
        return out
    base = _draw(rng, 0.2, 1.2)
    offsets = [0]
    for g in gaps:
        offsets.append(offsets[-1] + g)
    cluster = [base + o for o in offsets]
    spectators: list[float] = []
    while len(cluster) + len(spectators) < 4:
        spectators.append(_draw_separated(rng, 0.15, 2.5, [base] + spectators))
    return cluster + spectators


def random_lower(rng: random.Random, upper) -> list[float]:
    return [_draw_separated(rng, 0.6, 3.5, upper) for _ in range(3)]


def random_params(rng: random.Random, kind: str, gaps=None) -> ParameterSet:
    upper = random_upper(rng, kind, gaps)
    lower = random_lower(rng, upper)
    return ParameterSet(tuple(_fmt(x) for x in upper), tuple(_fmt(x) for x in lower))


def format_z(z: complex) -> str:
    re, im = round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0
    if im == 0:
        return repr(re)
    return f"{re!r}{im:+.12g}j"


def outer_z(rng: random.Random) -> str:
    """|z| in {2, 5, 10}, arg(-z) in {0, +2, -2}."""
    r = rng.choice((2, 5, 10))
    theta = rng.choice((0, 2, -2))
    return format_z(-r * cmath.exp(1j * theta))


def inner_z(rng: random.Random) -> str:
    r = rng.choice((0.3, 0.5, 0.8))
    theta = rng.choice((0, 1.5, -2.5))
    return format_z(-r * cmath.exp(1j * theta))


def builtin_suite(seed: int, per_kind: int = 3) -> list[Case]:
    """Mixed suite: generic sets inside and outside the disc, plus clustered sets outside."""
    rng = random.Random(seed)
    cases = []
    for i in range(per_kind):
        cases.append(Case(f"generic-in-{i:02d}", "generic", random_params(rng, "generic"), inner_z(rng)))
        cases.append(Case(f"generic-out-{i:02d}", "generic", random_params(rng, "generic"), outer_z(rng)))
    for kind, options in PATTERN_GAPS.items():
        for i in range(per_kind):
            gaps = rng.choice(options)
            cases.append(Case(f"{kind}-{i:02d}", kind, random_params(rng, kind, gaps), outer_z(rng)))
    return cases
