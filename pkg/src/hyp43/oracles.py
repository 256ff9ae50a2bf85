"""Reference evaluators: defining series, generic continuation and the epsilon limit.

The Mellin-Barnes quadrature lives in :mod:`hyp43.mellin_barnes`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import (
    CancellationLoss,
    IntegerDifference,
    InvalidParameter,
    NotConverged,
    OutsideDomain,
    UnsupportedPattern,
)
from .expansions import check_outer_argument, is_real_case, spectator_series
from .numerics import (
    INTEGER_TOL,
    GammaBracketSpec,
    PrecisionContext,
    fmt_number,
    gamma_bracket,
    is_nonpositive_integer,
    nearest_integer,
)
from .patterns import GapPattern, ParameterSet, PatternKind, classify_pattern
from .results import EvalResult, Method, SeriesControl, SmallTermCounter

# relative agreement required between the two epsilon runs
EPSILON_AGREEMENT = 1e-6
# only exact poles are rejected inside the epsilon runs
EXACT_POLE_TOL = 1e-300


def series_4f3(params: ParameterSet, z, ctl: SeriesControl | None = None) -> EvalResult:
    """Defining Pochhammer series, |z| < 1.

    Upper parameters may be non-positive integers here (the sum terminates);
    lower ones may not.
    """
    ctl = ctl or SeriesControl()
    ctx = ctl.ctx
    mp = ctx.mp
    z = ctx.convert(z)
    if abs(z) >= 1:
        raise OutsideDomain(f"series needs |z| < 1, got |z| = {mp.nstr(abs(z), 12)}")
    upper = params.upper(ctx)
    lower = params.lower(ctx)
    for b in lower:
        if is_nonpositive_integer(b):
            raise InvalidParameter(f"lower parameter {fmt_number(b, 12)} is a non-positive integer")
    term = mp.mpc(1)
    total = mp.mpc(1)
    counter = SmallTermCounter(ctl)
    k = 0
    while True:
        ratio = z / (k + 1)
        for a in upper:
            ratio *= a + k
        for b in lower:
            ratio /= b + k
        term *= ratio
        k += 1
        if term == 0:
            break
        total += term
        if counter.update(term, total):
            break
        if k >= ctl.max_terms:
            raise NotConverged(f"series not converged after {k} terms", partial=total)
    r = abs(z)
    err = abs(term) * r / (1 - r) if term != 0 else mp.mpf(0)
    return EvalResult(total, mp.mpf(err), k + 1, Method.SERIES, [])


def _continuation_sum(upper, lower, z, ctl: SeriesControl, pole_tol: float = INTEGER_TOL):
    """Sum of the simple-pole residue series of every upper parameter, normalised.

    No parameter checks: callers guarantee the upper parameters are pairwise
    non-integer apart (possibly only barely, as in the epsilon limit).
    """
    ctx = ctl.ctx
    total = ctx.mp.mpc(0)
    err = ctx.mp.mpf(0)
    terms = 0
    for i, s in enumerate(upper):
        others = [u for j, u in enumerate(upper) if j != i]
        part, part_err, part_terms = spectator_series(s, others, lower, z, ctl, pole_tol)
        total += part
        err += part_err
        terms = max(terms, part_terms)
    norm = gamma_bracket(GammaBracketSpec(lower, upper), ctx, pole_tol)
    return total * norm, err * abs(norm), terms


def generic_continuation(params: ParameterSet, z, ctl: SeriesControl | None = None) -> EvalResult:
    """Analytic continuation to |z| > 1 by simple-pole residues (no integer differences)."""
    ctl = ctl or SeriesControl()
    ctx = ctl.ctx
    mp = ctx.mp
    z = ctx.convert(z)
    upper = params.upper(ctx)
    lower = params.lower(ctx)
    for x in upper + lower:
        if is_nonpositive_integer(x):
            raise InvalidParameter(f"parameter {fmt_number(x, 12)} is a non-positive integer")
    for i in range(4):
        for j in range(i + 1, 4):
            if nearest_integer(upper[i] - upper[j]) is not None:
                raise IntegerDifference(
                    f"upper parameters {fmt_number(upper[i], 12)} and {fmt_number(upper[j], 12)} differ by an integer"
                )
    notes = check_outer_argument(z, ctx)
    value, err, terms = _continuation_sum(upper, lower, z, ctl)
    if is_real_case(upper, lower, z):
        value = mp.mpc(value.real)
    return EvalResult(value, err, terms, Method.GENERIC_CONTINUATION, notes)


@dataclass(frozen=True)
class EpsilonSchedule:
    eps_values: tuple = (1e-8, 1e-10)
    extrapolate: bool = True

    def __post_init__(self):
        vals = tuple(float(e) for e in self.eps_values)
        object.__setattr__(self, "eps_values", vals)
        if not vals or any(e <= 0 for e in vals):
            raise ValueError("eps_values must be positive")
        if any(b >= a for a, b in zip(vals, vals[1:])):
            raise ValueError("eps_values must be strictly decreasing")
        if self.extrapolate and len(vals) != 2:
            raise ValueError("Richardson extrapolation needs exactly two eps values")

    def check_precision(self, digits: int):
        # equality allowed so that eps = 1e-10 works at 30 digits
        floor = 10.0 ** (-digits / 3)
        for e in self.eps_values:
            if e < floor * (1 - 1e-12):
                raise ValueError(f"eps {e:g} is below the cancellation guard 10^(-{digits}/3)")


def epsilon_working_digits(digits: int, eps: float, order: int) -> int:
    """Precision for one epsilon run: cancellation costs ~log10(1/eps) digits per extra pole order."""
    loss = math.log10(1 / eps)
    return int(math.ceil(max(2 * digits, digits + 2 * loss, digits + (order - 1) * loss + 10)))


def perturbed_upper(pattern: GapPattern, eps, ctx: PrecisionContext) -> list:
    """Cluster members 2..q moved by eps*(1, phi, phi^2); the base and spectators stay put."""
    mp = ctx.mp
    eps = mp.mpf(eps)
    phi = (1 + mp.sqrt(5)) / 2
    # mpmath arithmetic runs at the left operand's precision, so lift everything first
    base = ctx.convert(pattern.base)
    out = [base]
    for k, o in enumerate(pattern.offsets[1:]):
        out.append(base + o + eps * phi**k)
    return out + [ctx.convert(s) for s in pattern.spectators]


def epsilon_limit(params: ParameterSet, pattern: GapPattern | None, z, sched: EpsilonSchedule | None = None,
                  ctl: SeriesControl | None = None) -> EvalResult:
    """Confluent limit of the generic continuation as the clustered parameters merge."""
    ctl = ctl or SeriesControl()
    sched = sched or EpsilonSchedule()
    ctx = ctl.ctx
    mp = ctx.mp
    if pattern is None:
        pattern = classify_pattern(params.a, ctx)
    if pattern.kind not in (PatternKind.PAIR, PatternKind.TRIPLE, PatternKind.QUAD):
        raise UnsupportedPattern(f"epsilon limit needs a clustered pattern, got {pattern.describe()}")
    sched.check_precision(ctx.digits)
    z = ctx.convert(z)
    notes = check_outer_argument(z, ctx)
    order = len(pattern.offsets)

    runs = []
    terms = 0
    for eps in sched.eps_values:
        wd = epsilon_working_digits(ctx.digits, eps, order)
        inner = SeriesControl(PrecisionContext(wd), max_terms=ctl.max_terms)
        ictx = inner.ctx
        upper = perturbed_upper(pattern, eps, ictx)
        lower = [ictx.convert(b) for b in params.b]
        value, _, used = _continuation_sum(upper, lower, ictx.convert(z), inner, EXACT_POLE_TOL)
        runs.append(value)
        terms = max(terms, used)

    if len(runs) == 1:
        value = runs[0]
        err = abs(value) * sched.eps_values[0]
    else:
        (e1, f1), (e2, f2) = zip(sched.eps_values, runs)
        spread = abs(f1 - f2)
        if spread > EPSILON_AGREEMENT * abs(f2):
            raise CancellationLoss(
                f"epsilon runs disagree: relative spread {mp.nstr(spread / abs(f2), 3)} exceeds {EPSILON_AGREEMENT:g}"
            )
        if sched.extrapolate:
            value = (e1 * f2 - e2 * f1) / (e1 - e2)
            # the last Richardson correction bounds the neglected second-order term
            err = abs(value - f2) + abs(value) * ctx.eps
        else:
            value = f2
            err = spread * e2 / (e1 - e2)
    value = ctx.mp.mpc(value)
    if is_real_case(params.upper(ctx), params.lower(ctx), z):
        value = mp.mpc(value.real)
    return EvalResult(value, mp.mpf(err), terms, Method.EPSILON_LIMIT, notes)
