"""Evaluate the remainder approximant from solved coefficients.

Three evaluation strategies share the scale factor rho_n and the expansion
point eps = 1/(n+alpha):

* power:      rho_n * sum gamma_mu * eps^mu              (plain truncation)
* factorial:  rho_n * sum gamma~_mu / (n+alpha)_mu        (Stirling transform)
* pade:       rho_n * [L/M](eps)                          (rational matching)

The factorial and Pade forms usually sharpen the power form considerably;
for divergent input series the power form can be wildly off at small n while
the other two stay usable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DegeneratePadeError, PoleError
from .combinatorics import stirling_first
from .families import FamilySpec
from .scalars import Scalar
from .series import TruncatedLaurentSeries, series_div
from .solver import GammaVector, solve_gamma

__all__ = [
    "FactorialGamma",
    "PadeApproximant",
    "remainder_power",
    "gamma_to_factorial",
    "remainder_factorial",
    "pade_from_series",
    "remainder_pade",
    "corrected_sum",
]


def remainder_power(family: FamilySpec, vector: GammaVector, n: int) -> Scalar:
    """scale(n) * sum_{mu<=m} gamma_mu / (n+alpha)^mu, by Horner."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    eps = family.eps_at(n)
    acc = vector.gammas[-1]
    for g in reversed(vector.gammas[:-1]):
        acc = acc * eps + g
    return family.scale_at(n) * acc


@dataclass(frozen=True)
class FactorialGamma:
    """Coefficients of the factorial-series form, with their origin."""

    source: GammaVector
    coefficients: tuple[Scalar, ...]

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1


def gamma_to_factorial(vector: GammaVector) -> FactorialGamma:
    """Rewrite sum gamma_mu eps^mu as sum gamma~_mu / (n+alpha)_mu.

    gamma~_0 = gamma_0, and for mu >= 1
    gamma~_mu = sum_{nu=1}^{mu} (-1)^(mu+nu) S1(mu-1, nu-1) gamma_nu,
    an all-integer (in fact all-nonnegative) combination since
    (-1)^(mu+nu) S1(mu-1, nu-1) = |S1(mu-1, nu-1)|.
    """
    out = [vector.gammas[0]]
    for mu in range(1, vector.order + 1):
        acc = None
        for nu in range(1, mu + 1):
            weight = stirling_first(mu - 1, nu - 1)
            if (mu + nu) % 2 == 1:
                weight = -weight
            if weight == 0:
                continue
            part = weight * vector.gammas[nu]
            acc = part if acc is None else acc + part
        if acc is None:
            acc = vector.gammas[0] - vector.gammas[0]
        out.append(acc)
    return FactorialGamma(source=vector, coefficients=tuple(out))


def remainder_factorial(family: FamilySpec, factorial: FactorialGamma, n: int) -> Scalar:
    """scale(n) * sum_{mu<=m} gamma~_mu / (n+alpha)_mu."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    base = n + family.alpha
    coeffs = factorial.coefficients
    acc = coeffs[0]
    denom = None
    for mu in range(1, len(coeffs)):
        factor = base + mu - 1
        denom = coeffs[0] - coeffs[0] + factor if denom is None else denom * factor
        acc = acc + coeffs[mu] / denom
    return family.scale_at(n) * acc


@dataclass(frozen=True)
class PadeApproximant:
    """Rational [L/M] matching a series through order L+M, with q0 = 1."""

    L: int
    M: int
    numerator: tuple[Scalar, ...]
    denominator: tuple[Scalar, ...]

    def evaluate(self, eps: Scalar) -> Scalar:
        num = self.numerator[-1]
        for c in reversed(self.numerator[:-1]):
            num = num * eps + c
        den = self.denominator[-1]
        for c in reversed(self.denominator[:-1]):
            den = den * eps + c
        if den.is_zero():
            raise PoleError(f"[{self.L}/{self.M}] denominator vanishes at eps = {eps}")
        return num / den


def _verify_matching(coeffs: Sequence[Scalar], approximant: PadeApproximant) -> None:
    order = approximant.L + approximant.M
    zero = coeffs[0] - coeffs[0]
    num = list(approximant.numerator) + [zero] * (order + 1 - len(approximant.numerator))
    den = list(approximant.denominator) + [zero] * (order + 1 - len(approximant.denominator))
    expansion = series_div(
        TruncatedLaurentSeries(num, 0), TruncatedLaurentSeries(den, 0)
    )
    if coeffs[0].is_exact:
        for k in range(order + 1):
            assert (expansion.coefficient(k) - coeffs[k]).is_zero(), \
                f"[{approximant.L}/{approximant.M}] fails to match at order {k}"
        return
    scale = abs(coeffs[0])
    one = Scalar.real(1, coeffs[0].digits)
    for c in coeffs[: order + 1]:
        if abs(c) > scale:
            scale = abs(c)
    if scale < one:
        scale = one
    tol = Scalar.real(10, coeffs[0].digits) ** (8 - coeffs[0].digits) * scale
    for k in range(order + 1):
        assert abs(expansion.coefficient(k) - coeffs[k]) <= tol, \
            f"[{approximant.L}/{approximant.M}] fails to match at order {k}"


def pade_from_series(coeffs: Sequence[Scalar], L: int, M: int) -> PadeApproximant:
    """Solve the [L/M] approximant of sum c_k eps^k.

    The denominator comes from the M x M Toeplitz system
    sum_{i=1..M} c_(L+j-i) q_i = -c_(L+j)  (j = 1..M, q_0 = 1, absent
    coefficients treated as zero), by Gaussian elimination with partial
    pivoting; the numerator follows by convolution.  The matching property
    through order L+M is re-derived and asserted before returning.
    """
    if L < 0 or M < 0:
        raise ValueError("degrees must be nonnegative")
    if len(coeffs) < L + M + 1:
        raise ValueError(f"[{L}/{M}] needs {L + M + 1} coefficients, got {len(coeffs)}")
    coeffs = list(coeffs)
    zero = coeffs[0] - coeffs[0]
    one_exact = coeffs[0].is_exact

    def c(k: int) -> Scalar:
        if k < 0 or k >= len(coeffs):
            return zero
        return coeffs[k]

    if M == 0:
        q = [Scalar.exact(1) if one_exact else Scalar.real(1, coeffs[0].digits)]
    else:
        rows = [[c(L + j - i) for i in range(1, M + 1)] + [-c(L + j)] for j in range(1, M + 1)]
        for col in range(M):
            pivot_row = max(range(col, M), key=lambda r: abs(rows[r][col]))
            if rows[pivot_row][col].is_zero():
                raise DegeneratePadeError(f"degenerate Pade table: [{L}/{M}] denominator system is singular")
            rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
            for r in range(col + 1, M):
                if rows[r][col].is_zero():
                    continue
                factor = rows[r][col] / rows[col][col]
                for k in range(col, M + 1):
                    rows[r][k] = rows[r][k] - factor * rows[col][k]
        solution: list[Scalar | None] = [None] * M
        for col in reversed(range(M)):
            acc = rows[col][M]
            for k in range(col + 1, M):
                acc = acc - rows[col][k] * solution[k]
            solution[col] = acc / rows[col][col]
        q = [Scalar.exact(1) if one_exact else Scalar.real(1, coeffs[0].digits)]
        q.extend(solution)  # type: ignore[arg-type]

    p = []
    for k in range(L + 1):
        acc = c(k) * q[0]
        for i in range(1, min(k, M) + 1):
            acc = acc + c(k - i) * q[i]
        p.append(acc)

    approximant = PadeApproximant(L=L, M=M, numerator=tuple(p), denominator=tuple(q))
    _verify_matching(coeffs, approximant)
    return approximant


def remainder_pade(family: FamilySpec, vector: GammaVector, n: int, L: int, M: int) -> Scalar:
    """scale(n) * [L/M](1/(n+alpha)) built from the gamma series."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    if L + M > vector.order:
        raise ValueError(f"[{L}/{M}] needs L+M <= m = {vector.order}")
    approximant = pade_from_series(vector.gammas, L, M)
    return family.scale_at(n) * approximant.evaluate(family.eps_at(n))


def corrected_sum(
    family: FamilySpec,
    n: int,
    m: int,
    method: str = "power",
    L: int | None = None,
    M: int | None = None,
) -> Scalar:
    """Partial sum minus remainder estimate: an approximation to the limit."""
    vector = solve_gamma(family, m)
    if method == "power":
        remainder = remainder_power(family, vector, n)
    elif method == "factorial":
        remainder = remainder_factorial(family, gamma_to_factorial(vector), n)
    elif method == "pade":
        L = m // 2 if L is None else L
        M = m // 2 if M is None else M
        remainder = remainder_pade(family, vector, n, L, M)
    else:
        raise ValueError(f"unknown method {method!r}; use power, factorial, or pade")
    return family.partial_sum(n) - remainder
