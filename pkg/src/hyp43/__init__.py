"""Generalized hypergeometric 4F3 in the logarithmic cases.

When upper parameters differ by integers the standard analytic continuation
to |z| > 1 breaks down and log(-z) terms appear.  This package evaluates
those cases through residue expansions and checks them against independent
oracles (defining series, generic continuation with an epsilon limit and
Mellin-Barnes quadrature).
"""

from .coefficients import CoefficientBundle, coeff_expansion1, coeff_expansion2, coeff_expansion3
from .dispatch import evaluate
from .errors import (
    CancellationLoss,
    ContourFailure,
    DegenerateLowerParameter,
    DomainError,
    Hyp43Error,
    IntegerDifference,
    InvalidParameter,
    NotConverged,
    NumeratorPole,
    NumericalFailure,
    OutsideDomain,
    PoleArgument,
    UnsupportedPattern,
)
from .expansions import expansion_one, expansion_three, expansion_two
from .mellin_barnes import ContourSpec, mellin_barnes, mellin_barnes_integral
from .numerics import (
    GammaBracketSpec,
    PrecisionContext,
    gamma_bracket,
    hurwitz_zeta,
    log_gamma,
    polygamma,
)
from .oracles import EpsilonSchedule, epsilon_limit, generic_continuation, series_4f3
from .patterns import GapPattern, ParameterSet, PatternKind, classify_pattern
from .results import EvalResult, Method, SeriesControl

__version__ = "0.1.0"

__all__ = [
    "CancellationLoss", "CoefficientBundle", "ContourFailure", "ContourSpec", "DegenerateLowerParameter",
    "DomainError", "EpsilonSchedule", "EvalResult", "GammaBracketSpec", "GapPattern", "Hyp43Error",
    "IntegerDifference", "InvalidParameter", "Method", "NotConverged", "NumeratorPole", "NumericalFailure",
    "OutsideDomain", "ParameterSet", "PatternKind", "PoleArgument", "PrecisionContext", "SeriesControl",
    "UnsupportedPattern", "classify_pattern", "coeff_expansion1", "coeff_expansion2", "coeff_expansion3",
    "epsilon_limit", "evaluate", "expansion_one", "expansion_three", "expansion_two", "gamma_bracket",
    "generic_continuation", "hurwitz_zeta", "log_gamma", "mellin_barnes", "mellin_barnes_integral",
    "polygamma", "series_4f3",
]
