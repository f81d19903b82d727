"""Truncated Laurent/power series in the indeterminate eps = 1/(n+alpha).

A series stores coefficients of eps^base_order .. eps^M with base_order in
{-1, 0}: the lone negative power is all the asymptotic machinery ever needs,
and capping it surfaces bookkeeping bugs early.  All coefficients of one
series share one scalar kind.  Truncation orders are explicit; no operation
reports coefficients beyond the order it can account for.
"""

from __future__ import annotations

from collections.abc import Sequence

from .combinatorics import binomial_coefficient
from .errors import KindMismatchError
from .scalars import EXACT, Scalar

__all__ = [
    "TruncatedLaurentSeries",
    "series_add",
    "series_mul",
    "series_div",
    "binomial_series",
    "shift_substitute",
    "series_evaluate",
    "coefficient_at",
]

_MIN_BASE = -1


def _zero_like(template: Scalar) -> Scalar:
    if template.is_exact:
        return Scalar.exact(0)
    return Scalar.real(0, template.digits)


def _one_like(template: Scalar) -> Scalar:
    if template.is_exact:
        return Scalar.exact(1)
    return Scalar.real(1, template.digits)


class TruncatedLaurentSeries:
    """Coefficients of eps^base_order .. eps^truncation_order, one kind."""

    __slots__ = ("_base", "_coeffs")

    def __init__(self, coefficients: Sequence[Scalar], base_order: int = 0) -> None:
        coeffs = tuple(coefficients)
        if not coeffs:
            raise ValueError("a series needs at least one coefficient")
        if base_order not in (0, _MIN_BASE):
            raise ValueError(f"base order must be 0 or {_MIN_BASE}, got {base_order}")
        if base_order + len(coeffs) - 1 < 0:
            raise ValueError("truncation order must be >= 0")
        kinds = {c.kind for c in coeffs}
        if len(kinds) != 1:
            raise KindMismatchError("series coefficients must share one scalar kind")
        self._base = base_order
        self._coeffs = coeffs

    # ------------------------------------------------------------- constructors

    @classmethod
    def constant(cls, value: Scalar, truncation_order: int) -> "TruncatedLaurentSeries":
        zeros = [_zero_like(value) for _ in range(truncation_order)]
        return cls([value, *zeros], 0)

    @classmethod
    def monomial(cls, power: int, truncation_order: int, one: Scalar | None = None) -> "TruncatedLaurentSeries":
        """The series eps^power (power >= -1) truncated at ``truncation_order``."""
        if power < _MIN_BASE:
            raise ValueError(f"power must be >= {_MIN_BASE}")
        unit = _one_like(one) if one is not None else Scalar.exact(1)
        length = truncation_order - power + 1
        if length < 1:
            raise ValueError("truncation order below the requested power")
        coeffs = [_zero_like(unit) for _ in range(length)]
        coeffs[0] = unit
        base = power if power == _MIN_BASE else 0
        if base == 0 and power > 0:
            # shift the unit up into the polynomial part
            coeffs = [_zero_like(unit)] * power + coeffs
            coeffs = coeffs[: truncation_order + 1]
        return cls(coeffs, base)

    # --------------------------------------------------------------- properties

    @property
    def base_order(self) -> int:
        return self._base

    @property
    def truncation_order(self) -> int:
        return self._base + len(self._coeffs) - 1

    @property
    def coefficients(self) -> tuple[Scalar, ...]:
        return self._coeffs

    @property
    def kind(self) -> str:
        return self._coeffs[0].kind

    def coefficient(self, order: int) -> Scalar:
        if order < self._base or order > self.truncation_order:
            raise ValueError(
                f"order {order} outside stored range {self._base}..{self.truncation_order}"
            )
        return self._coeffs[order - self._base]

    def truncated(self, truncation_order: int) -> "TruncatedLaurentSeries":
        """Drop coefficients above ``truncation_order`` (never extends)."""
        if truncation_order >= self.truncation_order:
            return self
        length = truncation_order - self._base + 1
        if length < 1:
            raise ValueError("cannot truncate below the base order")
        return TruncatedLaurentSeries(self._coeffs[:length], self._base)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return (
            self._base == other._base
            and len(self._coeffs) == len(other._coeffs)
            and all(a == b for a, b in zip(self._coeffs, other._coeffs))
        )

    __hash__ = None

    def __repr__(self) -> str:
        parts = []
        for k, c in zip(range(self._base, self.truncation_order + 1), self._coeffs):
            parts.append(f"{c}*eps^{k}")
        return f"<series {' + '.join(parts)}>"

    # -------------------------------------------------------------- arithmetic

    def __add__(self, other):
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return series_add(self, other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return series_mul(self, other)


def _check_kinds(x: TruncatedLaurentSeries, y: TruncatedLaurentSeries) -> None:
    if x.kind != y.kind:
        raise KindMismatchError("series of different scalar kinds; convert explicitly")


def series_add(x: TruncatedLaurentSeries, y: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Coefficientwise sum; truncation at the smaller order, base at the smaller base."""
    _check_kinds(x, y)
    base = min(x.base_order, y.base_order)
    top = min(x.truncation_order, y.truncation_order)
    zero = _zero_like(x.coefficients[0])
    out = []
    for k in range(base, top + 1):
        acc = zero
        if x.base_order <= k <= x.truncation_order:
            acc = acc + x.coefficient(k)
        if y.base_order <= k <= y.truncation_order:
            acc = acc + y.coefficient(k)
        out.append(acc)
    return TruncatedLaurentSeries(out, base)


def series_mul(x: TruncatedLaurentSeries, y: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Cauchy product, truncated where the inputs stop determining it.

    The coefficient at order o needs x through o - y.base and y through
    o - x.base, so the result is only valid up to
    min(x.trunc + y.base, y.trunc + x.base); claiming more would silently
    drop cross terms whenever a factor starts at eps^-1.

    The base orders add; anything below eps^-1 is rejected because no
    expansion in this domain produces it (a bug would).
    """
    _check_kinds(x, y)
    base = x.base_order + y.base_order
    if base < _MIN_BASE:
        raise ValueError("product would need base order below -1")
    top = min(x.truncation_order + y.base_order, y.truncation_order + x.base_order)
    if top < base:
        raise ValueError("truncation orders leave no representable coefficients")
    zero = _zero_like(x.coefficients[0])
    out = [zero for _ in range(top - base + 1)]
    for i, xi in enumerate(x.coefficients):
        if xi.is_zero():
            continue
        oi = x.base_order + i
        for j, yj in enumerate(y.coefficients):
            oj = oi + y.base_order + j
            if oj > top:
                break
            out[oj - base] = out[oj - base] + xi * yj
    return TruncatedLaurentSeries(out, base)


def series_div(num: TruncatedLaurentSeries, den: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Quotient q with q*den = num as far as the inputs determine it.

    The denominator must have base order 0 and an invertible constant term.
    The recurrence for q at order k consumes den up to index k - num.base,
    so the result stops at min(num.trunc, den.trunc + num.base).
    """
    _check_kinds(num, den)
    if den.base_order != 0:
        raise ValueError("denominator must have base order 0")
    d0 = den.coefficient(0)
    if d0.is_zero():
        raise ZeroDivisionError("denominator has zero constant term")
    base = num.base_order
    top = min(num.truncation_order, den.truncation_order + base)
    out: list[Scalar] = []
    for k in range(base, top + 1):
        acc = num.coefficient(k) if k <= num.truncation_order else _zero_like(d0)
        for j, qj in enumerate(out):
            dk = k - (base + j)
            if 1 <= dk <= den.truncation_order:
                acc = acc - qj * den.coefficient(dk)
        out.append(acc / d0)
    return TruncatedLaurentSeries(out, base)


def binomial_series(exponent: Scalar, truncation_order: int) -> TruncatedLaurentSeries:
    """The expansion of (1+eps)^a: coefficients binom(a, k) for k = 0..M."""
    if truncation_order < 0:
        raise ValueError("truncation order must be >= 0")
    coeffs = [binomial_coefficient(exponent, k) for k in range(truncation_order + 1)]
    return TruncatedLaurentSeries(coeffs, 0)


def _phi(truncation_order: int, template: Scalar) -> TruncatedLaurentSeries:
    """The shift map phi(eps) = eps/(1+eps) = eps - eps^2 + eps^3 - ..."""
    one = _one_like(template)
    coeffs = [_zero_like(template)]
    sign = 1
    for _ in range(truncation_order):
        coeffs.append(one if sign > 0 else -one)
        sign = -sign
    return TruncatedLaurentSeries(coeffs, 0)


def shift_substitute(series: TruncatedLaurentSeries, truncation_order: int) -> TruncatedLaurentSeries:
    """Compose with the shift map: returns S(phi(eps)) truncated as requested.

    The input must have base order 0.  Stored coefficients are read as a
    polynomial (orders beyond the input's truncation are zero), so a monomial
    can be re-expanded to any order; the constant term is unchanged.
    """
    if series.base_order != 0:
        raise ValueError("shift substitution needs base order 0")
    template = series.coefficients[0]
    phi = _phi(truncation_order, template)
    result = TruncatedLaurentSeries.constant(
        series.coefficient(series.truncation_order), truncation_order
    )
    for k in range(series.truncation_order - 1, -1, -1):
        result = series_mul(result, phi)
        result = series_add(result, TruncatedLaurentSeries.constant(series.coefficient(k), truncation_order))
    return result


def series_evaluate(series: TruncatedLaurentSeries, eps0: Scalar) -> Scalar:
    """Horner evaluation at eps = eps0, carried out in the kind of eps0."""
    if eps0.is_zero() and series.base_order < 0:
        raise ZeroDivisionError("cannot evaluate a Laurent part at eps = 0")
    coeffs = series.coefficients
    if series.kind != eps0.kind:
        if eps0.kind == EXACT:
            raise KindMismatchError("real series cannot be evaluated at an exact point")
        coeffs = tuple(c.to_real(eps0.digits) for c in coeffs)
    acc = _zero_like(eps0)
    for c in reversed(coeffs):
        acc = acc * eps0 + c
    if series.base_order < 0:
        acc = acc * eps0 ** series.base_order
    return acc


def coefficient_at(series: TruncatedLaurentSeries, order: int) -> Scalar:
    """The stored coefficient of eps^order; out-of-range orders are an error."""
    return series.coefficient(order)
