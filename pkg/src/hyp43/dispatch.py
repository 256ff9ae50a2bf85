"""Pattern-aware dispatch for 4F3(a; b; z)."""

from __future__ import annotations

from .errors import InvalidParameter, OutsideDomain, UnsupportedPattern
from .expansions import expansion_one, expansion_three, expansion_two
from .mellin_barnes import mellin_barnes
from .numerics import fmt_number, is_nonpositive_integer
from .oracles import EpsilonSchedule, epsilon_limit, generic_continuation, series_4f3
from .patterns import ParameterSet, PatternKind, classify_pattern
from .results import EvalResult, Method, SeriesControl

METHOD_NAMES = ("auto", "exp1", "exp2", "exp3", "series", "generic", "mb", "eps")

_ALIASES = {
    Method.EXPANSION1: "exp1",
    Method.EXPANSION2: "exp2",
    Method.EXPANSION3: "exp3",
    Method.SERIES: "series",
    Method.GENERIC_CONTINUATION: "generic",
    Method.MELLIN_BARNES: "mb",
    Method.EPSILON_LIMIT: "eps",
}

_AUTO_EXPANSION = {PatternKind.PAIR: "exp1", PatternKind.TRIPLE: "exp2", PatternKind.QUAD: "exp3"}


def normalize_method(method) -> str:
    if method is None:
        return "auto"
    if isinstance(method, Method):
        return _ALIASES[method]
    name = str(method).lower()
    if name not in METHOD_NAMES:
        raise ValueError(f"unknown method {method!r}; choose from {', '.join(METHOD_NAMES)}")
    return name


def default_schedule(digits: int) -> EpsilonSchedule:
    """(1e-8, 1e-10) when the precision allows it, otherwise the smallest admissible pair."""
    if digits >= 30:
        return EpsilonSchedule()
    k = digits // 3
    return EpsilonSchedule((10.0 ** -(k - 2), 10.0**-k))


def evaluate(params: ParameterSet, z, ctl: SeriesControl | None = None, method=None, *,
             use_printed=()) -> EvalResult:
    """Evaluate 4F3 by the method appropriate to ``z`` and the upper-parameter pattern.

    ``method`` (``"auto"`` by default) forces a specific evaluator; see
    :data:`METHOD_NAMES`.  ``use_printed`` is forwarded to the expansions.
    """
    ctl = ctl or SeriesControl()
    ctx = ctl.ctx
    mp = ctx.mp
    name = normalize_method(method)
    z = ctx.convert(z)
    upper = params.upper(ctx)
    lower = params.lower(ctx)
    for x in upper:
        if is_nonpositive_integer(x):
            raise InvalidParameter(f"upper parameter {fmt_number(x, 12)} is a non-positive integer")
    for x in lower:
        if is_nonpositive_integer(x):
            raise InvalidParameter(f"lower parameter {fmt_number(x, 12)} is a non-positive integer")

    r = abs(z)
    if r == 1:
        raise OutsideDomain("|z| = 1 is outside every implemented method's domain")
    if z == 0 and name in ("auto", "series"):
        return EvalResult(mp.mpc(1), mp.mpf(0), 1, Method.SERIES, [])

    pattern = classify_pattern(upper, ctx)
    if name == "auto":
        if r < 1:
            name = "series"
        elif pattern.kind is PatternKind.GENERIC:
            name = "generic"
        elif pattern.kind in _AUTO_EXPANSION:
            name = _AUTO_EXPANSION[pattern.kind]
        else:
            raise UnsupportedPattern(f"no expansion for upper-parameter pattern {pattern.describe()} at |z| > 1")

    if name == "series":
        result = series_4f3(params, z, ctl)
        result.warnings = list(pattern.warnings) + result.warnings
        return result
    if name == "generic":
        return generic_continuation(params, z, ctl)
    if name == "mb":
        return mellin_barnes(params, z, None, ctx)
    if name == "eps":
        return epsilon_limit(params, pattern, z, default_schedule(ctx.digits), ctl)
    func = {"exp1": expansion_one, "exp2": expansion_two, "exp3": expansion_three}[name]
    return func(params, pattern, z, ctl, use_printed=use_printed)
