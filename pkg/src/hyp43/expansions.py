"""Logarithmic expansions of 4F3 for |z| > 1 with integer-gapped upper parameters.

All three expansions are the residue sum of the Mellin-Barnes integrand closed
to the left.  The clustered family ``xi = -a1 - nu`` yields poles of order
1..q as ``nu`` crosses the offsets ``0, m, m+n, m+n+p``; each spectator ``s``
adds an ordinary simple-pole series.  One engine handles every cluster size.
"""

from __future__ import annotations

import warnings as _warnings

from . import errata
from .coefficients import CoefficientLadder
from .errors import NotConverged, OutsideDomain, UnsupportedPattern
from .numerics import INTEGER_TOL, GammaBracketSpec, gamma_bracket
from .patterns import GapPattern, ParameterSet, PatternKind, check_parameters, classify_pattern
from .results import EvalResult, Method, SeriesControl, SmallTermCounter

SLOW_CONVERGENCE_RADIUS = 1.05

_METHOD = {
    PatternKind.PAIR: Method.EXPANSION1,
    PatternKind.TRIPLE: Method.EXPANSION2,
    PatternKind.QUAD: Method.EXPANSION3,
}


def check_outer_argument(z, ctx) -> list[str]:
    """Validate ``z`` for a |z| > 1 expansion; return warnings."""
    if z.imag == 0 and z.real >= 0:
        raise OutsideDomain(f"z = {ctx.mp.nstr(z, 12)} lies on the branch cut [0, inf)")
    r = abs(z)
    if r <= 1:
        raise OutsideDomain(f"|z| = {ctx.mp.nstr(r, 12)} is not > 1")
    if r <= SLOW_CONVERGENCE_RADIUS:
        msg = f"|z| = {ctx.mp.nstr(r, 8)} is close to 1; convergence is slow"
        _warnings.warn(msg, RuntimeWarning, stacklevel=3)
        return [msg]
    return []


def is_real_case(upper, lower, z) -> bool:
    """Real parameters and z < -1 or -1 < z < 0: F is real, imaginary round-off is dropped."""
    return z.imag == 0 and all(x.imag == 0 for x in list(upper) + list(lower))


def _tail_bound(last, z):
    # geometric bound on the remainder once terms decay like |z|^-nu
    r = abs(z)
    return abs(last) * r / (r - 1)


class _InverseFactorials:
    def __init__(self, mp):
        self.mp = mp
        self.inv = [mp.mpf(1)]
        self.fact = [mp.mpf(1)]

    def inv_fact(self, k):
        while len(self.inv) <= k:
            j = len(self.inv)
            self.inv.append(self.inv[-1] / j)
        return self.inv[k]

    def factorial(self, k):
        while len(self.fact) <= k:
            j = len(self.fact)
            self.fact.append(self.fact[-1] * j)
        return self.fact[k]


def _bracket(order: int, r, L):
    """[t^(order-1)] of exp(r1 t + r2 t^2/2 + r3 t^3/6 + L t)."""
    if order == 1:
        return 1
    x = r[0] + L
    if order == 2:
        return x
    if order == 3:
        return (x * x + r[1]) / 2
    return (x * x * x + 3 * x * r[1] + r[2]) / 6


def _cluster_sum(pattern: GapPattern, lower, z, ctl: SeriesControl, printed):
    """Residue sum of the clustered family, without the 1/Gamma[a/b] normalisation."""
    ctx = ctl.ctx
    mp = ctx.mp
    kind = pattern.kind
    a1 = pattern.base
    offsets = pattern.offsets
    last_edge = offsets[-1]
    spect = pattern.spectators
    L = mp.log(-z)
    mz_inv = 1 / (-z)
    facts = _InverseFactorials(mp)
    ladder = CoefficientLadder(pattern, lower, ctx, printed)

    # G(nu) = Gamma(a1+nu) prod Gamma(s-a1-nu) / prod Gamma(b-a1-nu) (-z)^(-a1-nu)
    G = gamma_bracket(GammaBracketSpec([a1] + [s - a1 for s in spect], [b - a1 for b in lower]), ctx)
    G *= mp.exp(-a1 * L)
    z_inv = 1 / z
    zpow = mp.mpc(1)  # z^(-nu) for the printed pair finite band
    z2pow = mp.mpc(1)  # z^(2 nu) for the printed triple tail

    total = mp.mpc(0)
    last = mp.mpc(0)
    counter = SmallTermCounter(ctl)
    blowup = mp.mpf(10) ** ctx.digits
    scale = mp.mpf(0)
    nu = 0
    while True:
        if nu >= ctl.max_terms:
            raise NotConverged(f"cluster series not converged after {nu} terms", partial=total)
        order = 0
        R = mp.mpf(1)
        for o in offsets:
            if o <= nu:
                order += 1
                k = nu - o
                R *= facts.inv_fact(k)
                if k & 1:
                    R = -R
            else:
                R *= facts.factorial(o - nu - 1)
        term = R * G
        if order > 1:
            term *= _bracket(order, ladder.values(), L)
        term = _apply_printed(term, kind, order, nu, printed, zpow, z2pow, facts)
        total += term
        last = term
        nu += 1
        if nu > last_edge and counter.update(term, total):
            break
        if nu <= last_edge + 1:
            scale = max(scale, abs(total))
        if not mp.isfinite(total) or (nu > last_edge and abs(term) > blowup * scale):
            raise NotConverged(f"cluster series diverges (term {nu})", partial=total)
        x = a1 + nu - 1
        G *= x * mz_inv
        for s in spect:
            G /= s - x - 1
        for b in lower:
            G *= b - x - 1
        ladder.advance()
        if printed:
            zpow *= z_inv
            z2pow *= z * z
    return total, _tail_bound(last, z), nu


def _apply_printed(term, kind, order, nu, printed, zpow, z2pow, facts):
    if not printed:
        return term
    if kind is PatternKind.PAIR:
        if order == 1 and errata.PAIR_FINITE_POWER in printed:
            term *= zpow
    elif kind is PatternKind.TRIPLE:
        if order == 3:
            if errata.TRIPLE_TAIL_POWER in printed:
                term *= z2pow
            if errata.TRIPLE_TAIL_HALF in printed:
                term *= 2
    elif kind is PatternKind.QUAD:
        if order == 1 and errata.QUAD_FINITE_FACTORIAL in printed:
            term *= facts.factorial(nu)
        elif order == 2 and errata.QUAD_LOG1_POWER in printed and nu & 1:
            term = -term
        elif order == 4 and errata.QUAD_TAIL_FACTORIAL in printed:
            term *= 6
    return term


def spectator_series(s, others, lower, z, ctl: SeriesControl, pole_tol: float = INTEGER_TOL):
    """Simple-pole series at ``xi = -s - nu`` (unnormalised).

    ``sum (-1)^nu/nu! Gamma(s+nu) prod Gamma(u-s-nu) / prod Gamma(b-s-nu) (-z)^(-s-nu)``
    over the other upper parameters ``u``.  Returns ``(sum, abs_err, terms)``.
    """
    ctx = ctl.ctx
    mp = ctx.mp
    L = mp.log(-z)
    mz_inv = 1 / (-z)
    term = gamma_bracket(GammaBracketSpec([s] + [u - s for u in others], [b - s for b in lower]), ctx, pole_tol)
    term *= mp.exp(-s * L)
    total = mp.mpc(0)
    counter = SmallTermCounter(ctl)
    nu = 0
    while True:
        if nu >= ctl.max_terms:
            raise NotConverged(f"spectator series not converged after {nu} terms", partial=total)
        total += term
        last = term
        nu += 1
        if counter.update(term, total):
            break
        x = s + nu - 1
        # (-1)/nu from the residue, 1/(u-x-1) from each Gamma(u-s-nu), (b-x-1) from each 1/Gamma(b-s-nu)
        ratio = -x * mz_inv / nu
        for u in others:
            ratio /= u - x - 1
        for b in lower:
            ratio *= b - x - 1
        term *= ratio
        if term == 0:
            last = term  # terminated exactly
            break
    return total, _tail_bound(last, z), nu


def _expand(kind: PatternKind, params: ParameterSet, pattern: GapPattern | None, z,
            ctl: SeriesControl, use_printed) -> EvalResult:
    ctx = ctl.ctx
    mp = ctx.mp
    printed = errata.check_ids(use_printed)
    # re-derive at the working precision; a caller's pattern may come from a coarser context
    computed = classify_pattern(params.a, ctx)
    if pattern is not None and (pattern.kind, pattern.gaps) != (computed.kind, computed.gaps):
        raise ValueError(f"pattern {pattern.describe()} does not match the parameters ({computed.describe()})")
    pattern = computed
    if pattern.kind is not kind:
        raise UnsupportedPattern(f"{_METHOD[kind].value} needs a {kind.value} pattern, got {pattern.describe()}")
    if ctl.max_terms < pattern.total_gap + 10:
        raise ValueError(f"max_terms must be at least m+n+p+10 = {pattern.total_gap + 10}")
    z = ctx.convert(z)
    notes = check_parameters(params, pattern, ctx)
    notes += check_outer_argument(z, ctx)
    lower = params.lower(ctx)

    cluster_vals = [pattern.base + o for o in pattern.offsets]
    upper = cluster_vals + list(pattern.spectators)
    norm = gamma_bracket(GammaBracketSpec(lower, upper), ctx)

    total, err, terms = _cluster_sum(pattern, lower, z, ctl, printed)
    if errata.SPECTATOR_FAMILIES not in printed:
        for i, s in enumerate(pattern.spectators):
            others = cluster_vals + [u for j, u in enumerate(pattern.spectators) if j != i]
            part, part_err, part_terms = spectator_series(s, others, lower, z, ctl)
            total += part
            err += part_err
            terms = max(terms, part_terms)
    value = total * norm
    if is_real_case(upper, lower, z):
        value = mp.mpc(value.real)
    return EvalResult(value, mp.mpf(err * abs(norm)), terms, _METHOD[kind], notes)


def expansion_one(params: ParameterSet, pattern: GapPattern | None, z, ctl: SeriesControl | None = None,
                  *, use_printed=()) -> EvalResult:
    """4F3 for |z| > 1 when exactly two upper parameters differ by an integer m >= 0."""
    return _expand(PatternKind.PAIR, params, pattern, z, ctl or SeriesControl(), use_printed)


def expansion_two(params: ParameterSet, pattern: GapPattern | None, z, ctl: SeriesControl | None = None,
                  *, use_printed=()) -> EvalResult:
    """4F3 for |z| > 1 when three upper parameters sit at a1, a1+m, a1+m+n."""
    return _expand(PatternKind.TRIPLE, params, pattern, z, ctl or SeriesControl(), use_printed)


def expansion_three(params: ParameterSet, pattern: GapPattern | None, z, ctl: SeriesControl | None = None,
                    *, use_printed=()) -> EvalResult:
    """4F3 for |z| > 1 when all four upper parameters sit at a1, a1+m, a1+m+n, a1+m+n+p."""
    return _expand(PatternKind.QUAD, params, pattern, z, ctl or SeriesControl(), use_printed)
