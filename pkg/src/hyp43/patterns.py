"""Parameter sets and the integer-gap classifier.

Upper parameters that differ by integers collide in the Mellin-Barnes
integrand and produce poles of order 2, 3 or 4.  :func:`classify_pattern`
finds that structure and puts the cluster in canonical order
``base, base+m, base+m+n, base+m+n+p``.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import mpmath

from .errors import DegenerateLowerParameter, InvalidParameter
from .numerics import (
    ILL_CONDITIONED_TOL,
    INTEGER_TOL,
    PrecisionContext,
    fmt_number,
    integer_distance,
    is_nonpositive_integer,
    nearest_integer,
)

DEFAULT_CONTEXT = PrecisionContext(30)


@dataclass(frozen=True)
class ParameterSet:
    """Four upper parameters ``a`` and three lower parameters ``b``.

    Entries may be numbers, mpmath values or decimal/complex string literals;
    they are converted lazily so the same set can be evaluated at any precision.
    """

    a: tuple
    b: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "b", tuple(self.b))
        if len(self.a) != 4 or len(self.b) != 3:
            raise InvalidParameter(f"need 4 upper and 3 lower parameters, got {len(self.a)} and {len(self.b)}")

    def upper(self, ctx: PrecisionContext) -> tuple:
        return tuple(ctx.convert(x) for x in self.a)

    def lower(self, ctx: PrecisionContext) -> tuple:
        return tuple(ctx.convert(x) for x in self.b)


class PatternKind(str, enum.Enum):
    GENERIC = "generic"
    PAIR = "pair"
    TRIPLE = "triple"
    QUAD = "quad"
    UNSUPPORTED = "unsupported"


_KIND_BY_SIZES = {
    (1, 1, 1, 1): PatternKind.GENERIC,
    (2, 1, 1): PatternKind.PAIR,
    (3, 1): PatternKind.TRIPLE,
    (4,): PatternKind.QUAD,
}


@dataclass(frozen=True)
class GapPattern:
    kind: PatternKind
    base: object = None
    gaps: tuple = ()
    spectators: tuple = ()
    cluster: tuple = ()
    warnings: tuple = field(default=(), compare=False)

    @property
    def offsets(self) -> tuple:
        """Integer offsets of the cluster members from the base: (0, m, m+n, ...)."""
        out = [0]
        for g in self.gaps:
            out.append(out[-1] + g)
        return tuple(out)

    @property
    def total_gap(self) -> int:
        return sum(self.gaps)

    def describe(self) -> str:
        if self.base is None:
            return self.kind.value
        names = "mnp"[: len(self.gaps)]
        gaps = ", ".join(f"{k}={g}" for k, g in zip(names, self.gaps))
        base = self.base.real if self.base.imag == 0 else self.base
        return f"{self.kind.value}(base={mpmath.nstr(base, 12)}, {gaps})"


def _sort_key(x):
    return (x.real, x.imag)


def _offset(v, anchor) -> int:
    # chained snapping can exceed INTEGER_TOL slightly, so round instead of re-testing
    return int(math.floor((v - anchor).real + 0.5))


def classify_pattern(upper: Sequence, ctx: PrecisionContext | None = None) -> GapPattern:
    """Classify the integer-difference structure of the four upper parameters.

    Returns ``Generic`` (no integer differences), ``Pair``, ``Triple``, ``Quad``
    or ``Unsupported`` (for instance two disjoint pairs).  The result does not
    depend on the order of ``upper``.
    """
    ctx = ctx or DEFAULT_CONTEXT
    vals = [ctx.convert(x) for x in upper]
    if len(vals) != 4:
        raise InvalidParameter(f"expected 4 upper parameters, got {len(vals)}")

    parent = list(range(4))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    warnings = []
    for i, j in itertools.combinations(range(4), 2):
        diff = vals[j] - vals[i]
        if nearest_integer(diff, INTEGER_TOL) is not None:
            parent[find(i)] = find(j)
        elif integer_distance(diff) < ILL_CONDITIONED_TOL:
            warnings.append(
                f"upper parameters {fmt_number(vals[i], 15)} and {fmt_number(vals[j], 15)} "
                "differ by nearly an integer; results are ill-conditioned"
            )

    groups: dict[int, list] = {}
    for i in range(4):
        groups.setdefault(find(i), []).append(vals[i])
    sizes = tuple(sorted((len(g) for g in groups.values()), reverse=True))
    kind = _KIND_BY_SIZES.get(sizes, PatternKind.UNSUPPORTED)

    if kind in (PatternKind.GENERIC, PatternKind.UNSUPPORTED):
        return GapPattern(kind, spectators=tuple(sorted(vals, key=_sort_key)), warnings=tuple(warnings))

    cluster = max(groups.values(), key=len)
    anchor = cluster[0]
    ranked = sorted(cluster, key=lambda v: (_offset(v, anchor), _sort_key(v)))
    base = ranked[0]
    offsets = [_offset(v, base) for v in ranked]
    gaps = tuple(b - a for a, b in zip(offsets, offsets[1:]))
    spectators = [v for g in groups.values() if g is not cluster for v in g]
    return GapPattern(
        kind,
        base=base,
        gaps=gaps,
        spectators=tuple(sorted(spectators, key=_sort_key)),
        cluster=tuple(ranked),
        warnings=tuple(warnings),
    )


def check_parameters(params: ParameterSet, pattern: GapPattern, ctx: PrecisionContext) -> list[str]:
    """Enforce the parameter invariants shared by every expansion.

    Lower parameters may differ from *spectators* by integers (including the
    exact cancellation ``a_i = b_j``); that only removes poles.  A lower
    parameter that differs from a *cluster* member by an integer is rejected.
    Returns a list of ill-conditioning warnings.
    """
    upper = params.upper(ctx)
    lower = params.lower(ctx)
    for x in upper:
        if is_nonpositive_integer(x):
            raise InvalidParameter(f"upper parameter {fmt_number(x, 12)} is a non-positive integer")
    for x in lower:
        if is_nonpositive_integer(x):
            raise InvalidParameter(f"lower parameter {fmt_number(x, 12)} is a non-positive integer")
    warnings = list(pattern.warnings)
    for b in lower:
        for a in pattern.cluster:
            d = b - a
            if nearest_integer(d) is not None:
                raise DegenerateLowerParameter(
                    f"lower parameter {fmt_number(b, 12)} differs from clustered upper "
                    f"parameter {fmt_number(a, 12)} by an integer"
                )
            if integer_distance(d) < ILL_CONDITIONED_TOL:
                warnings.append(f"lower parameter {fmt_number(b, 12)} nearly degenerate with the cluster")
    return warnings
