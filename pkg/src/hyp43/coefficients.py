"""Coefficient systems of the three logarithmic expansions.

With ``x = b_j - a1 - nu`` and ``s`` a spectator, the coefficients are

* pair: ``A``
* triple: ``theta`` (log^1 band), ``B`` and ``B'`` (log^2 tail)
* quad: ``C`` (log^1), ``D`` and ``D'`` (log^2), ``E``, ``E'`` and ``E''`` (log^3 tail)

``coeff_expansion1/2/3`` evaluate them directly from polygamma and Hurwitz
zeta values.  :class:`CoefficientLadder` produces the same numbers for
consecutive ``nu`` from one-step recurrences; the expansion engine uses it.

Past a band edge some published symbols, e.g. ``psi(m+n-nu)`` inside ``theta``,
would sit on a pole.  They cancel identically in ``B = theta + psi(nu-m-n+1) -
psi(m+n-nu)``, so the bundles store the finite remainder under the old name:
for ``nu >= m+n`` the ``theta`` entry is ``theta - psi(m+n-nu)``.  The same
applies to ``C``, ``D`` and ``D'`` further out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import errata
from .numerics import PrecisionContext, hurwitz_zeta, polygamma
from .patterns import GapPattern, ParameterSet, PatternKind


@dataclass
class CoefficientBundle:
    nu: int
    values: dict = field(default_factory=dict)

    def __getitem__(self, name):
        return self.values[name]

    def __contains__(self, name):
        return name in self.values


def _require(pattern: GapPattern, kind: PatternKind, nu: int):
    if pattern.kind is not kind:
        raise ValueError(f"expected a {kind.value} pattern, got {pattern.kind.value}")
    if nu < pattern.gaps[0]:
        raise ValueError(f"nu={nu} lies in the non-logarithmic band (nu < m={pattern.gaps[0]})")


def coeff_expansion1(nu: int, pattern: GapPattern, params: ParameterSet, ctx: PrecisionContext,
                     *, use_printed=()) -> CoefficientBundle:
    """``A`` of the pair expansion for ``nu >= m``."""
    _require(pattern, PatternKind.PAIR, nu)
    errata.check_ids(use_printed)
    (m,) = pattern.gaps
    a1 = pattern.base
    s3, s4 = pattern.spectators

    def psi(x):
        return polygamma(0, x, ctx)

    A = psi(nu + 1) + psi(nu + 1 - m) + psi(s3 - a1 - nu) + psi(s4 - a1 - nu) - psi(a1 + nu)
    for b in params.lower(ctx):
        A -= psi(b - a1 - nu)
    return CoefficientBundle(nu, {"A": A})


def coeff_expansion2(nu: int, pattern: GapPattern, params: ParameterSet, ctx: PrecisionContext,
                     *, use_printed=()) -> CoefficientBundle:
    """``theta`` for ``m <= nu < m+n``; ``theta`` (remainder), ``B``, ``B'`` beyond."""
    _require(pattern, PatternKind.TRIPLE, nu)
    printed = errata.check_ids(use_printed)
    m, n = pattern.gaps
    a1 = pattern.base
    (a2,) = pattern.spectators
    lower = params.lower(ctx)
    sign = -1 if errata.TRIPLE_SPECTATOR_SIGN in printed else 1

    def psi(x):
        return polygamma(0, x, ctx)

    def trigamma(x):
        return polygamma(1, x, ctx)

    common = sign * psi(a2 - a1 - nu) - psi(a1 + nu) - sum(psi(b - a1 - nu) for b in lower)
    if nu < m + n:
        theta = psi(nu + 1) + psi(nu - m + 1) + psi(m + n - nu) + common
        return CoefficientBundle(nu, {"theta": theta})

    theta = psi(nu + 1) + psi(nu - m + 1) + common
    B = theta + psi(nu - m - n + 1)
    z2_1 = hurwitz_zeta(2, 1, ctx)
    Bp = (3 * trigamma(1) + 3 * z2_1 - hurwitz_zeta(2, nu + 1, ctx) - hurwitz_zeta(2, nu - m + 1, ctx)
          - hurwitz_zeta(2, nu - m - n + 1, ctx)
          + sign * trigamma(a2 - a1 - nu) + trigamma(a1 + nu)
          - sum(trigamma(b - a1 - nu) for b in lower))
    return CoefficientBundle(nu, {"theta": theta, "B": B, "Bprime": Bp})


def coeff_expansion3(nu: int, pattern: GapPattern, params: ParameterSet, ctx: PrecisionContext,
                     *, use_printed=()) -> CoefficientBundle:
    """Band-appropriate subset of ``C, D, D', E, E', E''`` of the quad expansion."""
    _require(pattern, PatternKind.QUAD, nu)
    printed = errata.check_ids(use_printed)
    m, n, p = pattern.gaps
    a1 = pattern.base
    lower = params.lower(ctx)

    def psi(x):
        return polygamma(0, x, ctx)

    def trigamma(x):
        return polygamma(1, x, ctx)

    def zeta(s, x):
        return hurwitz_zeta(s, x, ctx)

    common = -psi(a1 + nu) - sum(psi(b - a1 - nu) for b in lower)
    if nu < m + n:
        C = psi(nu + 1) + psi(nu - m + 1) + psi(m + n - nu) + psi(m + n + p - nu) + common
        return CoefficientBundle(nu, {"C": C})

    z2_1 = zeta(2, 1)
    dprime_core = (3 * trigamma(1) + 3 * z2_1 - zeta(2, nu + 1) - zeta(2, nu - m + 1)
                   - zeta(2, nu - m - n + 1) + trigamma(a1 + nu)
                   - sum(trigamma(b - a1 - nu) for b in lower))
    if nu < m + n + p:
        C = psi(nu + 1) + psi(nu - m + 1) + psi(m + n + p - nu) + common
        D = C + psi(nu - m - n + 1)
        sign = -1 if errata.QUAD_DPRIME_SIGN in printed else 1
        Dp = dprime_core + sign * trigamma(m + n + p - nu)
        return CoefficientBundle(nu, {"C": C, "D": D, "Dprime": Dp})

    C = psi(nu + 1) + psi(nu - m + 1) + common
    D = C + psi(nu - m - n + 1)
    E = D + psi(nu - m - n - p + 1)
    Ep = dprime_core + trigamma(1) + z2_1 - zeta(2, nu - m - n - p + 1)
    Epp = (2 * (2 * polygamma(2, 1, ctx) + 4 * zeta(3, 1) - zeta(3, nu + 1) - zeta(3, nu - m + 1)
                - zeta(3, nu - m - n + 1) - zeta(3, nu - m - n - p + 1))
           - polygamma(2, a1 + nu, ctx) - sum(polygamma(2, b - a1 - nu, ctx) for b in lower))
    return CoefficientBundle(nu, {"C": C, "D": D, "Dprime": dprime_core, "E": E, "Eprime": Ep,
                                  "Eprimeprime": Epp})


class _HarmonicTable:
    """Generalized harmonic numbers H_k^(s) = sum_{j<=k} j^(-s), grown on demand."""

    def __init__(self, mp):
        self.mp = mp
        self.h = {1: [mp.mpf(0)], 2: [mp.mpf(0)], 3: [mp.mpf(0)]}

    def __call__(self, s: int, k: int):
        col = self.h[s]
        while len(col) <= k:
            j = len(col)
            col.append(col[-1] + self.mp.mpf(1) / self.mp.mpf(j) ** s)
        return col[k]


class CoefficientLadder:
    """Steps the log-derivative sums ``r1, r2, r3`` of the cluster residue in ``nu``.

    At ``nu`` the residue of the integrand at ``xi = -a1 - nu`` is
    ``prefactor * [t^(q-1)] exp(r1 t + r2 t^2/2 + r3 t^3/6)`` for a pole of
    order ``q``.  ``r1`` is ``A``/``theta``/``B``/``C``/``D``/``E`` depending on the
    band, ``r2`` is ``B'``/``D'``/``E'`` and ``r3`` is ``E''`` (all without
    ``log(-z)``).  Non-integer arguments move by one unit per step, integer
    ones are read off harmonic-number tables.
    """

    def __init__(self, pattern: GapPattern, lower, ctx: PrecisionContext, use_printed=()):
        self.ctx = ctx
        mp = self.mp = ctx.mp
        self.pattern = pattern
        self.offsets = pattern.offsets
        self.orders = min(3, len(self.offsets))
        printed = frozenset(use_printed)
        self.spectator_sign = -1 if errata.TRIPLE_SPECTATOR_SIGN in printed else 1
        self.dprime_flip = errata.QUAD_DPRIME_SIGN in printed
        self.H = _HarmonicTable(mp)
        self.euler = mp.euler
        self.zeta2 = mp.zeta(2)
        self.zeta3 = mp.zeta(3)
        a1 = pattern.base
        self.nu = 0
        self.up = a1
        self.up_vals = [polygamma(k, a1, ctx) for k in range(self.orders)]
        self.down = []
        for s in pattern.spectators:
            y = s - a1
            self.down.append([self.spectator_sign, y, [polygamma(k, y, ctx) for k in range(self.orders)]])
        for b in lower:
            y = b - a1
            self.down.append([-1, y, [polygamma(k, y, ctx) for k in range(self.orders)]])

    def _int_psi(self, order: int, k: int):
        """psi^(order)(k) for a positive integer k."""
        H = self.H
        if order == 0:
            return -self.euler + H(1, k - 1)
        if order == 1:
            return self.zeta2 - H(2, k - 1)
        return -2 * (self.zeta3 - H(3, k - 1))

    def _pole_term(self, order: int, k: int):
        """Log-derivative contribution of the pole factor Gamma(-k + t)."""
        H = self.H
        if order == 0:
            return -self.euler + H(1, k)
        if order == 1:
            return self.zeta2 + H(2, k)
        return -2 * (self.zeta3 - H(3, k))

    def values(self) -> list:
        """``[r1, r2, r3][:orders]`` at the current ``nu``."""
        nu = self.nu
        out = []
        for order in range(self.orders):
            r = self.mp.mpc(0)
            for o in self.offsets:
                if o <= nu:
                    r += self._pole_term(order, nu - o)
                elif order == 1 and self.dprime_flip and nu >= self.offsets[2]:
                    r -= self._int_psi(order, o - nu)
                else:
                    r += self._int_psi(order, o - nu)
            # Gamma(-xi) = Gamma(a1 + nu - t): odd orders flip sign
            r += -self.up_vals[order] if order != 1 else self.up_vals[order]
            for sign, _, vals in self.down:
                r += sign * vals[order]
            out.append(r)
        return out

    def advance(self):
        nu = self.nu
        x = self.up
        inv = 1 / x
        self.up_vals[0] += inv
        if self.orders > 1:
            self.up_vals[1] -= inv * inv
        if self.orders > 2:
            self.up_vals[2] += 2 * inv * inv * inv
        self.up = x + 1
        for entry in self.down:
            y = entry[1] - nu - 1  # new argument
            inv = 1 / y
            vals = entry[2]
            vals[0] -= inv
            if self.orders > 1:
                vals[1] += inv * inv
            if self.orders > 2:
                vals[2] -= 2 * inv * inv * inv
        self.nu = nu + 1

    def bundle(self) -> CoefficientBundle:
        """Named coefficients at the current ``nu`` (same layout as the direct functions)."""
        nu = self.nu
        kind = self.pattern.kind
        r = self.values()
        offs = self.offsets
        out = {}
        if kind is PatternKind.PAIR:
            out["A"] = r[0]
        elif kind is PatternKind.TRIPLE:
            if nu < offs[2]:
                out["theta"] = r[0]
            else:
                out["B"] = r[0]
                out["Bprime"] = r[1]
                out["theta"] = r[0] - self._pole_term(0, nu - offs[2])
        elif kind is PatternKind.QUAD:
            if nu < offs[2]:
                out["C"] = r[0]
            elif nu < offs[3]:
                out["D"] = r[0]
                out["Dprime"] = r[1]
                out["C"] = r[0] - self._pole_term(0, nu - offs[2])
            else:
                out["E"] = r[0]
                out["Eprime"] = r[1]
                out["Eprimeprime"] = r[2]
                out["D"] = r[0] - self._pole_term(0, nu - offs[3])
                out["C"] = out["D"] - self._pole_term(0, nu - offs[2])
                out["Dprime"] = r[1] - self._pole_term(1, nu - offs[3])
        return CoefficientBundle(nu, out)
