"""Complex arbitrary-precision scalar kernel.

Everything here is a pure function of its arguments and an explicit
:class:`PrecisionContext`.  Each context hands out a private, thread-local
``mpmath`` context, so no global ``mp.dps`` is ever touched.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath.ctx_mp import MPContext

from .errors import NumeratorPole, PoleArgument

#: Absolute distance below which a complex number is treated as an integer.
INTEGER_TOL = 1e-10
#: Inside this distance (but outside INTEGER_TOL) inputs are flagged ill-conditioned.
ILL_CONDITIONED_TOL = 1e-6
#: Extra decimal digits carried on top of the requested precision.
GUARD_DIGITS = 10

_local = threading.local()


def _mp_for(dps: int) -> MPContext:
    contexts = getattr(_local, "contexts", None)
    if contexts is None:
        contexts = _local.contexts = {}
    mp = contexts.get(dps)
    if mp is None:
        mp = MPContext()
        mp.dps = dps
        contexts[dps] = mp
    return mp


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision, in significant decimal digits (at least 15)."""

    digits: int = 30
    _bern: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.digits) != self.digits or self.digits < 15:
            raise ValueError(f"digits must be an integer >= 15, got {self.digits!r}")

    @property
    def mp(self) -> MPContext:
        return _mp_for(self.digits + GUARD_DIGITS)

    @property
    def eps(self):
        """Unit roundoff of the working precision."""
        return self.mp.mpf(10) ** (-(self.digits + GUARD_DIGITS))

    def convert(self, x):
        """Coerce ``x`` (number, string literal, mpmath value) to a context ``mpc``."""
        mp = self.mp
        if isinstance(x, str):
            re_s, im_s = _split_complex_literal(x)
            return mp.mpc(mp.mpf(re_s), mp.mpf(im_s))
        if isinstance(x, Fraction):
            return mp.mpc(mp.mpf(x.numerator) / x.denominator)
        if isinstance(x, (mpmath.mpf, mpmath.mpc)) or hasattr(x, "_mpf_") or hasattr(x, "_mpc_"):
            return mp.mpc(x)
        if isinstance(x, complex):
            return mp.mpc(x.real, x.imag)
        return mp.mpc(x)

    def bernoulli(self, k: int):
        """Bernoulli number B_k at working precision (cached per context)."""
        b = self._bern.get(k)
        if b is None:
            b = self._bern[k] = self.mp.bernoulli(k)
        return b


_FLOAT = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL_RE = re.compile(rf"^[+-]?{_FLOAT}$")


def _split_complex_literal(text: str) -> tuple[str, str]:
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty numeric literal")
    if s[-1] not in "ij":
        if not _REAL_RE.match(s):
            raise ValueError(f"cannot parse numeric literal {text!r}")
        return s, "0"
    body = s[:-1]
    cut = None
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            cut = k
            break
    re_s, im_s = ("0", body) if cut is None else (body[:cut], body[cut:])
    if im_s in ("", "+"):
        im_s = "1"
    elif im_s == "-":
        im_s = "-1"
    if not (_REAL_RE.match(re_s) and _REAL_RE.match(im_s)):
        raise ValueError(f"cannot parse numeric literal {text!r}")
    return re_s, im_s


def parse_scalar(text: str, ctx: PrecisionContext):
    """Parse ``"1.5"``, ``"-3-4i"``, ``"2i"`` (``j`` also accepted) into an ``mpc``."""
    return ctx.convert(text)


def fmt_number(x, digits: int = 12) -> str:
    """Short text for messages: real values without a zero imaginary part."""
    if hasattr(x, "imag") and x.imag == 0:
        x = x.real
    return mpmath.nstr(x, digits)


def _parts(x):
    if hasattr(x, "real") and hasattr(x, "imag"):
        return x.real, x.imag
    return x, 0


def nearest_integer(x, tol: float = INTEGER_TOL) -> int | None:
    """Return ``k`` if ``|x - k| < tol`` for an integer ``k``, else ``None``."""
    re_part, im_part = _parts(x)
    k = int(math.floor(re_part + 0.5))
    d = math.hypot(float(re_part - k), float(im_part))
    return k if d < tol else None


def integer_distance(x) -> float:
    """Distance from ``x`` to the nearest integer, as a float."""
    re_part, im_part = _parts(x)
    k = int(math.floor(re_part + 0.5))
    return math.hypot(float(re_part - k), float(im_part))


def is_nonpositive_integer(x, tol: float = INTEGER_TOL) -> bool:
    k = nearest_integer(x, tol)
    return k is not None and k <= 0


def _check_pole(x, what: str, tol: float = INTEGER_TOL):
    if is_nonpositive_integer(x, tol):
        raise PoleArgument(f"{what}: argument {mpmath.nstr(x, 8)} is a non-positive integer")


def log_gamma(x, ctx: PrecisionContext, pole_tol: float = INTEGER_TOL):
    """Principal-branch log-gamma (branch cut along the negative real axis)."""
    x = ctx.convert(x)
    _check_pole(x, "log_gamma", pole_tol)
    return ctx.mp.mpc(ctx.mp.loggamma(x))


def recip_gamma(x, ctx: PrecisionContext):
    """1/Γ(x); exactly zero at non-positive integers."""
    x = ctx.convert(x)
    if is_nonpositive_integer(x):
        return ctx.mp.mpc(0)
    return ctx.mp.mpc(ctx.mp.rgamma(x))


def _shift_target(ctx: PrecisionContext) -> int:
    return max(20, ctx.digits // 2)


def _polygamma_asymptotic(order: int, w, ctx: PrecisionContext):
    mp = ctx.mp
    tiny = ctx.eps
    w2 = w * w
    if order == 0:
        total = mp.log(w) - 1 / (2 * w)
        power = w2  # w^(2k)
    elif order == 1:
        total = 1 / w + 1 / (2 * w2)
        power = w2 * w  # w^(2k+1)
    else:
        total = -1 / w2 - 1 / (w2 * w)
        power = w2 * w2  # w^(2k+2)
    scale = abs(total)
    last = None
    for k in range(1, 400):
        b = ctx.bernoulli(2 * k)
        if order == 0:
            term = -b / (2 * k * power)
        elif order == 1:
            term = b / power
        else:
            term = -(2 * k + 1) * b / power
        size = abs(term)
        if last is not None and size > last:
            break  # asymptotic series started to diverge
        total += term
        if size <= tiny * scale:
            break
        last = size
        power *= w2
    return total


def polygamma(order: int, x, ctx: PrecisionContext):
    """ψ (order 0), ψ′ (order 1) or ψ″ (order 2) at complex ``x``.

    The argument is shifted upward by recurrence until its real part reaches
    ``max(20, digits/2)``, where the Stirling-type asymptotic series of the
    log-gamma derivatives converges to working precision.
    """
    if order not in (0, 1, 2):
        raise ValueError(f"polygamma order must be 0, 1 or 2, got {order}")
    mp = ctx.mp
    x = ctx.convert(x)
    _check_pole(x, "polygamma")
    shift = max(0, math.ceil(_shift_target(ctx) - x.real))
    acc = mp.mpc(0)
    for j in range(shift):
        y = x + j
        if order == 0:
            acc -= 1 / y
        elif order == 1:
            acc += 1 / (y * y)
        else:
            acc -= 2 / (y * y * y)
    return acc + _polygamma_asymptotic(order, x + shift, ctx)


def hurwitz_zeta(s: int, nu, ctx: PrecisionContext):
    """ζ(s, ν) = Σ_{n≥0} (ν+n)^(-s) for s in {2, 3}, via shift plus Euler–Maclaurin."""
    if s not in (2, 3):
        raise ValueError(f"hurwitz_zeta supports s in {{2, 3}}, got {s}")
    mp = ctx.mp
    nu = ctx.convert(nu)
    _check_pole(nu, "hurwitz_zeta")
    shift = max(0, math.ceil(_shift_target(ctx) - nu.real))
    head = mp.mpc(0)
    for k in range(shift):
        head += (nu + k) ** (-s)
    w = nu + shift
    w_s = w ** (-s)
    tail = w * w_s / (s - 1) + w_s / 2
    scale = abs(tail)
    w_inv2 = 1 / (w * w)
    power = w_s / w  # w^(-s-2j+1) at j = 1
    coef = mp.mpf(s) / 2  # (s)_{2j-1} / (2j)! at j = 1
    last = None
    for j in range(1, 400):
        term = ctx.bernoulli(2 * j) * coef * power
        size = abs(term)
        if last is not None and size > last:
            break
        tail += term
        if size <= ctx.eps * scale:
            break
        last = size
        coef *= mp.mpf((s + 2 * j - 1) * (s + 2 * j)) / ((2 * j + 1) * (2 * j + 2))
        power *= w_inv2
    return head + tail


@dataclass(frozen=True)
class GammaBracketSpec:
    """Γ[num₁, num₂, … / den₁, den₂, …] = ΠΓ(numᵢ) / ΠΓ(denⱼ)."""

    numerators: Sequence = ()
    denominators: Sequence = ()


def gamma_bracket(spec: GammaBracketSpec, ctx: PrecisionContext, pole_tol: float = INTEGER_TOL):
    """Evaluate a gamma bracket through one exponentiation of summed log-gammas.

    A denominator at a non-positive integer makes the whole bracket exactly 0.
    ``pole_tol`` is the distance below which an argument counts as a pole; the
    epsilon-limit oracle lowers it to work with deliberately near-integer inputs.
    """
    mp = ctx.mp
    for x in spec.numerators:
        if is_nonpositive_integer(ctx.convert(x), pole_tol):
            raise NumeratorPole(f"gamma_bracket: numerator {x!r} is a non-positive integer")
    for x in spec.denominators:
        if is_nonpositive_integer(ctx.convert(x), pole_tol):
            return mp.mpc(0)
    total = mp.mpc(0)
    for x in spec.numerators:
        total += log_gamma(x, ctx, pole_tol)
    for x in spec.denominators:
        total -= log_gamma(x, ctx, pole_tol)
    return mp.exp(total)
