"""Series families: Dirichlet zeta, Gauss 2F1, generalized (p+1)Fp, and the
divergent asymptotic series of the exponential integral.

Each family exposes its terms a_n, the partial sums, the remainder-ansatz
scale factor rho_n, and the residual operators U(eps), V(eps) of the
canonical identity

    U(eps) * S(eps) + V(eps) * S(phi(eps)) = 1 + O(eps^(m+1)),

where eps = 1/(n+alpha), phi(eps) = eps/(1+eps), and the remainder
approximant is r_hat(n) = scale(n) * S(1/(n+alpha)).  The target constant is
+1 for every family; coefficient signs elsewhere in the literature differ by
a global factor, but this convention is the one that reproduces the numeric
tables and the closed rational form of the diagonal [2/2] approximant (see
README notes on signs).

Degenerate parameters (z = 1, s = 1, nonpositive-integer denominator
parameters, terminating series, z = 0) are rejected at construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import DegenerateParameterError, KindMismatchError, NotRepresentableError
from .scalars import Scalar
from .series import TruncatedLaurentSeries, binomial_series, series_add, series_div, series_mul

__all__ = [
    "FamilySpec",
    "make_zeta",
    "make_2f1",
    "make_pfq",
    "make_e1",
    "term",
    "partial_sum",
    "scale_at",
    "residual_operators",
]


@dataclass(frozen=True)
class FamilySpec:
    """A concrete series with its remainder-ansatz ingredients."""

    name: str
    params: tuple[tuple[str, Scalar], ...]
    alpha: int
    _term: Callable[[int], Scalar] = field(repr=False)
    _scale: Callable[[int], Scalar] = field(repr=False)
    _operators: Callable[[int], tuple[TruncatedLaurentSeries, TruncatedLaurentSeries]] = field(repr=False)
    _pivot_blame: Callable[[int], tuple[str, str]] = field(repr=False)

    @property
    def kind(self) -> str:
        return self.params[0][1].kind

    def param(self, name: str) -> Scalar:
        for key, value in self.params:
            if key == name:
                return value
        raise KeyError(name)

    def term(self, n: int) -> Scalar:
        """The term a_n of the series sum_{nu>=0} a_nu."""
        if n < 0:
            raise ValueError("term index must be nonnegative")
        return self._term(n)

    def partial_sum(self, n: int) -> Scalar:
        """s_n = sum_{nu=0}^{n} a_nu."""
        if n < 0:
            raise ValueError("partial sum index must be nonnegative")
        acc = self._term(0)
        for nu in range(1, n + 1):
            acc = acc + self._term(nu)
        return acc

    def scale_at(self, n: int) -> Scalar:
        """The ansatz prefactor rho_n dividing the remainder."""
        if n < 0:
            raise ValueError("scale index must be nonnegative")
        return self._scale(n)

    def residual_operators(self, truncation_order: int) -> tuple[TruncatedLaurentSeries, TruncatedLaurentSeries]:
        """The operators U, V truncated at the requested order.

        Asserts that the eps^-1 parts of U and V cancel identically, so the
        assembled residual has no negative orders.
        """
        if truncation_order < 0:
            raise ValueError("truncation order must be >= 0")
        u, v = self._operators(truncation_order)
        total = series_add(u, v)
        if total.base_order < 0:
            assert total.coefficient(-1).is_zero(), "eps^-1 parts of U and V must cancel"
        return u, v

    def pivot_blame(self, row: int) -> tuple[str, str]:
        """(parameter name, message) blaming a vanishing pivot in ``row``."""
        return self._pivot_blame(row)

    def eps_at(self, n: int) -> Scalar:
        """The expansion variable 1/(n+alpha), in the parameter kind."""
        if n < 0:
            raise ValueError("index must be nonnegative")
        template = self.params[0][1]
        if template.is_exact:
            return Scalar.exact(Fraction(1, n + self.alpha))
        digits = template.digits
        return Scalar.real(1, digits) / Scalar.real(n + self.alpha, digits)


def term(family: FamilySpec, n: int) -> Scalar:
    return family.term(n)


def partial_sum(family: FamilySpec, n: int) -> Scalar:
    return family.partial_sum(n)


def scale_at(family: FamilySpec, n: int) -> Scalar:
    return family.scale_at(n)


def residual_operators(family: FamilySpec, truncation_order: int):
    return family.residual_operators(truncation_order)


# ---------------------------------------------------------------------- helpers

def _one_like(x: Scalar) -> Scalar:
    return Scalar.exact(1) if x.is_exact else Scalar.real(1, x.digits)


def _zero_like(x: Scalar) -> Scalar:
    return Scalar.exact(0) if x.is_exact else Scalar.real(0, x.digits)


def _check_same_kind(values: list[Scalar]) -> None:
    kinds = {v.kind for v in values}
    if len(kinds) != 1:
        raise KindMismatchError("family parameters must share one scalar kind")


def _is_nonpositive_integer(x: Scalar) -> bool:
    return x.is_integer() and x <= 0


def _linear(coefficient: Scalar, truncation_order: int) -> TruncatedLaurentSeries:
    """The polynomial 1 + coefficient*eps padded to the truncation order."""
    one = _one_like(coefficient)
    zero = _zero_like(coefficient)
    coeffs = [one, coefficient] + [zero] * (truncation_order - 1)
    return TruncatedLaurentSeries(coeffs[: truncation_order + 1], 0)


def _scaled(series: TruncatedLaurentSeries, factor: Scalar) -> TruncatedLaurentSeries:
    return TruncatedLaurentSeries(
        [factor * c for c in series.coefficients], series.base_order
    )


# ---------------------------------------------------------------------- zeta

def make_zeta(s: Scalar) -> FamilySpec:
    """The Dirichlet series sum (nu+1)^(-s) of the Riemann zeta function.

    alpha = 2; term(nu) = (nu+1)^(-s); scale(n) = (n+2)^(1-s);
    U = -eps^-1 and V = eps^-1 (1+eps)^(1-s), so that dividing the forward
    difference of the ansatz by a_{n+1} = (n+2)^(-s) yields the canonical
    residual identity.  s = 1 is a genuine pole of the expansion.

    In the exact kind, terms and scales exist only for integer s; the
    coefficient solve itself stays exact for any rational s.
    """
    if s == 1:
        raise DegenerateParameterError("s", "degenerate parameter s = 1: leading pivot 1 - s vanishes")
    one = _one_like(s)

    def term_(nu: int) -> Scalar:
        base = Scalar.exact(nu + 1) if s.is_exact else Scalar.real(nu + 1, s.digits)
        try:
            return base.pow_scalar(-s)
        except NotRepresentableError as exc:
            raise NotRepresentableError(
                f"(nu+1)^(-s) is irrational for s = {s}; use real-kind parameters"
            ) from exc

    def scale_(n: int) -> Scalar:
        base = Scalar.exact(n + 2) if s.is_exact else Scalar.real(n + 2, s.digits)
        try:
            return base.pow_scalar(1 - s)
        except NotRepresentableError as exc:
            raise NotRepresentableError(
                f"(n+2)^(1-s) is irrational for s = {s}; use real-kind parameters"
            ) from exc

    def operators_(order: int):
        u_coeffs = [-one] + [_zero_like(s)] * (order + 1)
        u = TruncatedLaurentSeries(u_coeffs, -1)
        inv_eps = TruncatedLaurentSeries.monomial(-1, order + 1, one)
        v = series_mul(inv_eps, binomial_series(1 - s, order + 1)).truncated(order)
        return u.truncated(order), v

    def blame_(row: int) -> tuple[str, str]:
        return "s", f"parameter s = {s} makes the pivot (1 - s - {row}) vanish"

    return FamilySpec(
        name="zeta",
        params=(("s", s),),
        alpha=2,
        _term=term_,
        _scale=scale_,
        _operators=operators_,
        _pivot_blame=blame_,
    )


# ---------------------------------------------------------------------- 2F1

def make_2f1(a: Scalar, b: Scalar, c: Scalar, z: Scalar) -> FamilySpec:
    """The Gauss hypergeometric series sum (a)_nu (b)_nu z^nu / ((c)_nu nu!).

    alpha = 1; scale(n) = a_{n+1} (the first omitted term); U = -1 and
    V = z(1+a*eps)(1+b*eps) / ((1+c*eps)(1+eps)), the term ratio
    a_{n+2}/a_{n+1} re-expanded in eps = 1/(n+1).
    """
    _check_same_kind([a, b, c, z])
    if _is_nonpositive_integer(c):
        raise DegenerateParameterError("c", f"parameter c = {c} is a nonpositive integer (undefined terms)")
    for name, value in (("a", a), ("b", b)):
        if _is_nonpositive_integer(value):
            raise DegenerateParameterError(
                name, f"parameter {name} = {value} terminates the series; no asymptotic tail exists"
            )
    if z == 1:
        raise DegenerateParameterError("z", "parameter z = 1 makes the pivot (z - 1) vanish")
    if z.is_zero():
        raise DegenerateParameterError("z", "parameter z = 0 collapses the series to its first term")
    one = _one_like(z)

    def term_(nu: int) -> Scalar:
        acc = one
        for i in range(nu):
            acc = acc * (a + i) * (b + i) * z / ((c + i) * (i + 1))
        return acc

    def operators_(order: int):
        u = TruncatedLaurentSeries.constant(-one, order)
        num = _scaled(series_mul(_linear(a, order), _linear(b, order)), z)
        den = series_mul(_linear(c, order), _linear(one, order))
        return u, series_div(num, den)

    def blame_(row: int) -> tuple[str, str]:
        return "z", f"parameter z = {z} makes the pivot (z - 1) vanish"

    return FamilySpec(
        name="2f1",
        params=(("a", a), ("b", b), ("c", c), ("z", z)),
        alpha=1,
        _term=term_,
        _scale=lambda n: term_(n + 1),
        _operators=operators_,
        _pivot_blame=blame_,
    )


# ---------------------------------------------------------------------- pFq

def make_pfq(alphas: list[Scalar], betas: list[Scalar], z: Scalar) -> FamilySpec:
    """The generalized hypergeometric series with p+1 numerator and p
    denominator parameters: sum prod (alpha_i)_nu z^nu / (prod (beta_j)_nu nu!).

    Same ansatz as the Gauss case: alpha = 1, scale(n) = a_{n+1}, U = -1,
    V = z prod(1+alpha_i eps) / (prod(1+beta_j eps) (1+eps)).
    """
    if len(alphas) != len(betas) + 1:
        raise ValueError(
            f"need exactly one more numerator parameter than denominator ones, got {len(alphas)}/{len(betas)}"
        )
    _check_same_kind([*alphas, *betas, z])
    for j, beta in enumerate(betas):
        if _is_nonpositive_integer(beta):
            raise DegenerateParameterError(
                f"betas[{j}]", f"denominator parameter {beta} is a nonpositive integer (undefined terms)"
            )
    for i, alpha_i in enumerate(alphas):
        if _is_nonpositive_integer(alpha_i):
            raise DegenerateParameterError(
                f"alphas[{i}]", f"numerator parameter {alpha_i} terminates the series; no asymptotic tail exists"
            )
    if z == 1:
        raise DegenerateParameterError("z", "parameter z = 1 makes the pivot (z - 1) vanish")
    if z.is_zero():
        raise DegenerateParameterError("z", "parameter z = 0 collapses the series to its first term")
    one = _one_like(z)

    def term_(nu: int) -> Scalar:
        acc = one
        for i in range(nu):
            factor = z
            for alpha_i in alphas:
                factor = factor * (alpha_i + i)
            for beta_j in betas:
                factor = factor / (beta_j + i)
            acc = acc * factor / (i + 1)
        return acc

    def operators_(order: int):
        u = TruncatedLaurentSeries.constant(-one, order)
        num = TruncatedLaurentSeries.constant(one, order)
        for alpha_i in alphas:
            num = series_mul(num, _linear(alpha_i, order))
        num = _scaled(num, z)
        den = _linear(one, order)
        for beta_j in betas:
            den = series_mul(den, _linear(beta_j, order))
        return u, series_div(num, den)

    def blame_(row: int) -> tuple[str, str]:
        return "z", f"parameter z = {z} makes the pivot (z - 1) vanish"

    names = tuple(
        [(f"alphas[{i}]", alpha_i) for i, alpha_i in enumerate(alphas)]
        + [(f"betas[{j}]", beta_j) for j, beta_j in enumerate(betas)]
        + [("z", z)]
    )
    return FamilySpec(
        name="pfq",
        params=names,
        alpha=1,
        _term=term_,
        _scale=lambda n: term_(n + 1),
        _operators=operators_,
        _pivot_blame=blame_,
    )


# ---------------------------------------------------------------------- E1

def make_e1(z: Scalar) -> FamilySpec:
    """The divergent asymptotic series of z e^z E_1(z): terms (-1/z)^nu nu!.

    alpha = 1; scale(n) = a_n = (-1/z)^n n!; the residual identity is
    S(phi) + z*eps*S = 1, i.e. U = z*eps and V = 1.  Pivots are identically
    1, so the coefficient solve never degenerates.
    """
    if z.is_zero():
        raise DegenerateParameterError("z", "parameter z = 0: the series terms are undefined")
    one = _one_like(z)

    def term_(nu: int) -> Scalar:
        acc = one
        for i in range(1, nu + 1):
            acc = acc * i / (-z)
        return acc

    def operators_(order: int):
        zero = _zero_like(z)
        if order == 0:
            u = TruncatedLaurentSeries([zero], 0)
        else:
            u = TruncatedLaurentSeries([zero, z] + [zero] * (order - 1), 0)
        v = TruncatedLaurentSeries.constant(one, order)
        return u, v

    def blame_(row: int) -> tuple[str, str]:  # pragma: no cover - unreachable by construction
        return "z", "pivot is identically 1; a vanishing pivot indicates an internal bug"

    return FamilySpec(
        name="e1",
        params=(("z", z),),
        alpha=1,
        _term=term_,
        _scale=term_,
        _operators=operators_,
        _pivot_blame=blame_,
    )
