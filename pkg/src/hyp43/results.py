"""Series control knobs and evaluation results."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .numerics import PrecisionContext


class Method(str, enum.Enum):
    EXPANSION1 = "Expansion1"
    EXPANSION2 = "Expansion2"
    EXPANSION3 = "Expansion3"
    SERIES = "Series"
    GENERIC_CONTINUATION = "GenericContinuation"
    MELLIN_BARNES = "MellinBarnes"
    EPSILON_LIMIT = "EpsilonLimit"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SeriesControl:
    """Truncation policy shared by every infinite sum.

    ``rel_tol`` defaults to ``10**(5 - digits)``, which is also the tightest
    value allowed.  A sum stops once ``consecutive_small`` successive terms are
    below ``rel_tol`` times the running partial sum.
    """

    ctx: PrecisionContext = field(default_factory=PrecisionContext)
    rel_tol: float | None = None
    max_terms: int = 10000
    consecutive_small: int = 3

    def __post_init__(self):
        floor = self.ctx.mp.mpf(10) ** (5 - self.ctx.digits)
        if self.rel_tol is None:
            object.__setattr__(self, "rel_tol", floor)
        else:
            tol = self.ctx.mp.mpf(self.rel_tol)
            # tolerate float rounding of the literal 10**(5-digits)
            if tol < floor * (1 - 1e-9):
                raise ValueError(f"rel_tol {self.rel_tol} is tighter than 10^(5-digits)")
            object.__setattr__(self, "rel_tol", tol)
        if self.max_terms < 1 or self.consecutive_small < 1:
            raise ValueError("max_terms and consecutive_small must be positive")

    @classmethod
    def for_digits(cls, digits: int = 30, **kwargs) -> SeriesControl:
        return cls(ctx=PrecisionContext(digits), **kwargs)

    def with_digits(self, digits: int) -> SeriesControl:
        """Same term budget at a different precision (tolerance re-derived)."""
        return SeriesControl(PrecisionContext(digits), None, self.max_terms, self.consecutive_small)


@dataclass
class EvalResult:
    value: object
    abs_err_estimate: object
    terms_used: int
    method: Method
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        if self.abs_err_estimate < 0:
            raise ValueError("abs_err_estimate must be non-negative")

    def to_json(self, digits: int = 30) -> dict:
        """Schema-stable JSON view: value components as decimal strings."""
        import mpmath

        v = self.value
        return {
            "value": {"re": mpmath.nstr(v.real, digits), "im": mpmath.nstr(v.imag, digits)},
            "abs_err": float(self.abs_err_estimate),
            "terms": int(self.terms_used),
            "method": self.method.value,
            "warnings": list(self.warnings),
        }


class SmallTermCounter:
    """Tracks the ``consecutive_small`` stopping rule for one running sum."""

    def __init__(self, ctl: SeriesControl):
        self.rel_tol = ctl.rel_tol
        self.needed = ctl.consecutive_small
        self.run = 0

    def update(self, term, partial) -> bool:
        """Record ``term``; return True once the sum may stop."""
        if abs(term) < self.rel_tol * abs(partial):
            self.run += 1
        else:
            self.run = 0
        return self.run >= self.needed
