"""Mellin-Barnes quadrature of pFq with p = q + 1 (4F3 in particular).

    F * Gamma[a / b] = 1/(2 pi i) int Gamma(a1+xi)...Gamma(-xi) / prod Gamma(bj+xi) (-z)^xi dxi

The contour is the vertical line ``Re xi = c``.  Along it we substitute
``xi = c + i s sinh(u)`` and apply the trapezoid rule in ``u``: the integrand
then decays double-exponentially and the rule converges exponentially with
rate set by the half-width of the analyticity strip in ``u``.  Left-family
poles that end up right of the line are picked up by small circles, each
evaluated with the periodic trapezoid rule.  This reproduces the integral
over a Barnes contour indented around those poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ContourFailure, InvalidParameter, NotConverged, OutsideDomain
from .numerics import PrecisionContext, is_nonpositive_integer
from .patterns import DEFAULT_CONTEXT, ParameterSet
from .results import EvalResult, Method

MAX_ARG = 0.98 * math.pi
# straight separation is used when every Re(a) clears 0 by this much
MIN_CLEARANCE = 0.2
INDENT_RADIUS = 0.25
# smallest admissible circle around an offending pole
MIN_RADIUS = 1e-3
STRIP_SAFETY = 0.9
MAX_REFINEMENTS = 5
MAX_HEIGHT_DOUBLINGS = 4
CIRCLE_START_NODES = 32
CIRCLE_MAX_NODES = 4096


@dataclass(frozen=True)
class ContourSpec:
    """Quadrature contour.  ``None`` fields are chosen automatically.

    ``shift`` is the abscissa of the line, ``half_height`` the initial
    truncation height of ``|Im xi|`` (doubled while the tail is not negligible)
    and ``nodes`` the initial number of trapezoid nodes on the line (doubled
    until the error estimate meets the target).
    """

    shift: float | None = None
    half_height: float | None = None
    nodes: int | None = None
    indent_radius: float = INDENT_RADIUS

    def __post_init__(self):
        if self.shift is not None and self.shift >= 0:
            raise ValueError("shift must be negative (right poles start at 0)")
        if self.half_height is not None and self.half_height <= 0:
            raise ValueError("half_height must be positive")
        if self.nodes is not None and self.nodes < 2:
            raise ValueError("nodes must be >= 2")
        if not 0 < self.indent_radius <= 0.5:
            raise ValueError("indent_radius must lie in (0, 0.5]")


@dataclass
class _Circle:
    center: object
    radius: object


@dataclass
class _Plan:
    c: object
    scale: object
    width: float
    circles: list


def _left_poles(upper, lo, hi):
    """Poles -a-k of the Gamma(a+xi) factors with lo <= Re <= hi."""
    out = []
    for a in upper:
        k = max(0, math.ceil(-a.real - hi))
        while -a.real - k >= lo:
            out.append(-a - k)
            k += 1
    return out


def _right_poles(lo, hi, mp):
    return [mp.mpc(k) for k in range(max(0, math.ceil(lo)), math.floor(hi) + 1)]


def choose_shift(upper) -> float:
    """Abscissa that leaves as few left-family poles as possible on the wrong side."""
    amin = min(float(a.real) for a in upper)
    if amin >= MIN_CLEARANCE:
        return -amin / 2
    # widest gap among left-pole abscissae in [-3, 0]
    marks = sorted({-3.0, 0.0} | {float(p.real) for p in _left_poles(upper, -3, 0)})
    best = max(zip(marks, marks[1:]), key=lambda g: g[1] - g[0])
    return (best[0] + best[1]) / 2


def _plan(upper, z, spec: ContourSpec, ctx: PrecisionContext) -> _Plan:
    mp = ctx.mp
    c = spec.shift if spec.shift is not None else choose_shift(upper)
    c = mp.mpf(c)
    near = _left_poles(upper, c - 6, c + 6) + _right_poles(c - 6, c + 6, mp)
    if not near:
        near = [mp.mpc(0)]
    s = min(abs(p.real - c) for p in near)
    if s < 1e-6:
        raise ContourFailure(f"contour Re xi = {mp.nstr(c, 8)} runs through a pole")

    width = math.pi / 2
    for p in near:
        v = abs(float(mp.asinh((p - c) / (1j * s)).imag))
        width = min(width, v)
    arg = abs(float(mp.arg(-z)))
    logr = abs(float(mp.log(abs(z))))
    width = STRIP_SAFETY * min(width, math.atan2(math.pi - arg, logr))

    circles = []
    offending = [p for p in _left_poles(upper, c, c + 1e6) if p.real > c]
    groups: list[list] = []
    for p in offending:
        for g in groups:
            if abs(g[0] - p) < MIN_RADIUS / 10:
                g.append(p)
                break
        else:
            groups.append([p])
    everything = near + offending
    for g in groups:
        center = g[0]
        spread = max(abs(p - center) for p in g)
        others = [abs(p - center) for p in everything if all(abs(p - q) > MIN_RADIUS / 10 for q in g)]
        r = min([spec.indent_radius] + [d / 3 for d in others])
        if r < MIN_RADIUS or r < 10 * spread:
            raise ContourFailure(f"cannot isolate the pole at {mp.nstr(center, 8)} with an indentation")
        circles.append(_Circle(center, mp.mpf(r)))
    return _Plan(c, s, width, circles)


def _integrand(upper, lower, L, lognorm, mp):
    def f(xi):
        acc = mp.loggamma(-xi) + xi * L - lognorm
        for a in upper:
            acc += mp.loggamma(a + xi)
        for b in lower:
            acc -= mp.loggamma(b + xi)
        return mp.exp(acc)

    return f


def _line_integral(f, plan: _Plan, spec: ContourSpec, digits: int, symmetric: bool, mp):
    """Trapezoid rule for (1/2 pi i) int f over Re xi = c after xi = c + i s sinh(u)."""
    c, s = plan.c, plan.scale
    target = 10.0 ** (-(digits + 5))
    if spec.nodes is not None and spec.half_height is not None:
        h = 2 * math.asinh(spec.half_height / float(s)) / spec.nodes
    else:
        h = 2 * math.pi * plan.width / ((digits + 8) * math.log(10))
    max_u = [math.asinh((spec.half_height or 1e300) / float(s)), 0]

    cache = {}

    def node(k, h):
        # exact-key cache: halving h maps old nodes onto even indices
        key = k * h
        val = cache.get(key)
        if val is None:
            u = mp.mpf(key)
            xi = c + 1j * s * mp.sinh(u)
            try:
                val = f(xi) * s * mp.cosh(u)
            except (ValueError, ZeroDivisionError) as exc:
                raise ContourFailure(f"integrand singular on the contour at xi = {mp.nstr(xi, 8)}") from exc
            cache[key] = val
        return val

    def trapezoid(h):
        total = node(0, h)
        if symmetric:
            total = mp.mpc(total.real)
        sides = (1,) if symmetric else (1, -1)
        tail = mp.mpf(0)
        for side in sides:
            small = 0
            k = 1
            part = mp.mpc(0)
            while True:
                if k * h > max_u[0] and max_u[1] < MAX_HEIGHT_DOUBLINGS:
                    max_u[0] += math.log(2)  # doubles the height for large u
                    max_u[1] += 1
                if k * h > max_u[0]:
                    raise NotConverged("Mellin-Barnes tail not negligible at the truncation height",
                                       partial=total * h / (2 * mp.pi))
                val = node(side * k, h)
                part += val
                if abs(val) < target * abs(total + part):
                    small += 1
                    if small >= 3:
                        tail = max(tail, abs(val))
                        break
                else:
                    small = 0
                k += 1
            total += 2 * mp.mpc(part.real) if symmetric else part
        return total * h / (2 * mp.pi), tail * h, len(cache)

    # h * k keys must stay exactly representable under halving
    h = 2.0 ** math.floor(math.log2(h))
    prev, _, _ = trapezoid(2 * h)
    for _ in range(MAX_REFINEMENTS + 1):
        cur, tail, used = trapezoid(h)
        diff = abs(cur - prev)
        scale = abs(cur) or mp.mpf(1)
        # exponential convergence: halving h squares the relative error
        err = diff * diff / scale + tail + abs(cur) * mp.mpf(10) ** (-digits - 5)
        if diff <= scale * mp.mpf(10) ** (-(digits + 5) / 2):
            return cur, err, used
        prev = cur
        h /= 2
    raise NotConverged("Mellin-Barnes quadrature did not stabilise under node doubling", partial=cur)


def _circle_integral(f, circle: _Circle, scale, digits: int, mp):
    """(1/2 pi i) times the counterclockwise integral of f around the circle."""
    p, r = circle.center, circle.radius
    values = {}

    def node(j, K):
        # keyed by the reduced fraction so doubled grids reuse old nodes
        g = math.gcd(j, K)
        key = (j // g, K // g)
        val = values.get(key)
        if val is None:
            w = r * mp.expjpi(mp.mpf(2 * key[0]) / key[1])
            val = values[key] = f(p + w) * w
        return val

    K = CIRCLE_START_NODES
    prev = sum(node(j, K) for j in range(K)) / K
    while K < CIRCLE_MAX_NODES:
        K *= 2
        cur = sum(node(j, K) for j in range(K)) / K
        diff = abs(cur - prev)
        if diff <= (scale + abs(cur)) * mp.mpf(10) ** (-(digits + 5)):
            return cur, diff, K
        prev = cur
    raise NotConverged("indentation integral did not converge", partial=cur)


def check_contour_argument(z, ctx: PrecisionContext):
    mp = ctx.mp
    if z.imag == 0 and z.real >= 0:
        raise OutsideDomain(f"z = {mp.nstr(z, 12)} lies on [0, inf)")
    if abs(float(mp.arg(-z))) > MAX_ARG:
        raise OutsideDomain(f"|arg(-z)| > 0.98 pi at z = {mp.nstr(z, 12)}; the integrand decays too slowly")


def mellin_barnes_integral(upper, lower, z, ctx: PrecisionContext | None = None,
                           spec: ContourSpec | None = None) -> EvalResult:
    """pFq(upper; lower; z) with len(upper) == len(lower) + 1 by contour quadrature."""
    ctx = ctx or DEFAULT_CONTEXT
    spec = spec or ContourSpec()
    mp = ctx.mp
    upper = [ctx.convert(a) for a in upper]
    lower = [ctx.convert(b) for b in lower]
    if len(upper) != len(lower) + 1:
        raise ValueError("Mellin-Barnes quadrature needs p = q + 1 parameters")
    for x in upper + lower:
        if is_nonpositive_integer(x):
            raise InvalidParameter(f"parameter {mp.nstr(x, 12)} is a non-positive integer")
    z = ctx.convert(z)
    check_contour_argument(z, ctx)

    # identical upper/lower pairs cancel in the integrand
    upper, lower = list(upper), list(lower)
    for b in list(lower):
        for a in upper:
            if abs(a - b) <= ctx.eps:
                upper.remove(a)
                lower.remove(b)
                break

    plan = _plan(upper, z, spec, ctx)
    L = mp.log(-z)
    lognorm = mp.fsum(mp.loggamma(a) for a in upper) - mp.fsum(mp.loggamma(b) for b in lower)
    f = _integrand(upper, lower, L, lognorm, mp)
    symmetric = z.imag == 0 and all(x.imag == 0 for x in upper + lower)
    value, err, used = _line_integral(f, plan, spec, ctx.digits, symmetric, mp)
    scale = abs(value)
    for circle in plan.circles:
        part, part_err, k = _circle_integral(f, circle, scale, ctx.digits, mp)
        value += part
        err += part_err
        used += k
    if symmetric:
        value = mp.mpc(value.real)
    notes = [f"{len(plan.circles)} indentation(s) around left poles"] if plan.circles else []
    return EvalResult(value, mp.mpf(err), used, Method.MELLIN_BARNES, notes)


def default_contour(params: ParameterSet, z, ctx: PrecisionContext | None = None) -> ContourSpec:
    """Automatic contour as used by :func:`mellin_barnes` (shift only; heights adapt)."""
    ctx = ctx or DEFAULT_CONTEXT
    return ContourSpec(shift=choose_shift(params.upper(ctx)))


def mellin_barnes(params: ParameterSet, z, spec: ContourSpec | None = None,
                  ctx: PrecisionContext | None = None) -> EvalResult:
    """4F3 by Mellin-Barnes quadrature; valid inside and outside the unit disc."""
    ctx = ctx or DEFAULT_CONTEXT
    return mellin_barnes_integral(params.upper(ctx), params.lower(ctx), z, ctx, spec)
