"""Asymptotic estimates of series truncation errors.

Given a series with partial sums s_n, the truncation error r_n = s_n - s
satisfies the difference equation r_(n+1) - r_n = a_(n+1).  Writing
r_n ~ scale(n) * sum gamma_mu / (n+alpha)^mu turns that equation into a
triangular linear system for the gamma coefficients, solvable exactly for
rational parameters.  The expansion can then be evaluated as a plain power
series, resummed as a factorial series, or converted to a Pade approximant;
the oracle module provides independently computed references to measure all
of this against.

Supported families: the Dirichlet series of the Riemann zeta function, the
Gauss hypergeometric series, its generalized (p+1)Fp cousin, and the
divergent asymptotic series of z e^z E1(z).
"""

from .combinatorics import bernoulli, binomial_coefficient, pochhammer, stirling_first
from .errors import (
    DegenerateParameterError,
    DegeneratePadeError,
    KindMismatchError,
    NotRepresentableError,
    OracleError,
    PoleError,
    TailcutError,
)
from .families import FamilySpec, make_2f1, make_e1, make_pfq, make_zeta
from .oracle import (
    OracleConfig,
    e1_reference,
    e1_remainder_integral,
    euler_maclaurin_zeta_tail,
    for_consumer,
    partial_sum_value,
    remainder_exact,
    zeta_em_value,
    zeta_reference,
)
from .resummation import (
    FactorialGamma,
    PadeApproximant,
    corrected_sum,
    gamma_to_factorial,
    pade_from_series,
    remainder_factorial,
    remainder_pade,
    remainder_power,
)
from .scalars import DEFAULT_REAL_DIGITS, MIN_REAL_DIGITS, Scalar
from .series import (
    TruncatedLaurentSeries,
    binomial_series,
    series_add,
    series_div,
    series_evaluate,
    series_mul,
    shift_substitute,
)
from .solver import (
    GammaVector,
    ResidualSystem,
    bernoulli_from_zeta,
    build_system,
    residual_defect,
    solve_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "Scalar", "DEFAULT_REAL_DIGITS", "MIN_REAL_DIGITS",
    "TailcutError", "KindMismatchError", "NotRepresentableError",
    "DegenerateParameterError", "DegeneratePadeError", "PoleError", "OracleError",
    "bernoulli", "stirling_first", "pochhammer", "binomial_coefficient",
    "TruncatedLaurentSeries", "series_add", "series_mul", "series_div",
    "binomial_series", "shift_substitute", "series_evaluate",
    "FamilySpec", "make_zeta", "make_2f1", "make_pfq", "make_e1",
    "ResidualSystem", "GammaVector", "build_system", "solve_gamma",
    "residual_defect", "bernoulli_from_zeta",
    "FactorialGamma", "PadeApproximant", "remainder_power", "gamma_to_factorial",
    "remainder_factorial", "pade_from_series", "remainder_pade", "corrected_sum",
    "OracleConfig", "for_consumer", "zeta_reference", "zeta_em_value",
    "e1_reference", "e1_remainder_integral", "remainder_exact",
    "partial_sum_value", "euler_maclaurin_zeta_tail",
    "__version__",
]
