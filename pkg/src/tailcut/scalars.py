"""Scalar arithmetic in two kinds: exact rationals and fixed-precision reals.

A computation runs in one kind end to end.  Exact scalars wrap normalized
``fractions.Fraction`` payloads; real scalars wrap raw mpmath floats together
with a per-value decimal precision (no ambient/global precision state).
Arithmetic between the two kinds is rejected; conversion is explicit via
:meth:`Scalar.to_real`.
"""

from __future__ import annotations

from decimal import Decimal, InvalidOperation
from fractions import Fraction
import re

from mpmath import libmp
from mpmath.libmp import (
    from_int,
    from_rational,
    from_str,
    fzero,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_div,
    mpf_mul,
    mpf_neg,
    mpf_pow,
    mpf_pow_int,
    mpf_sub,
    round_nearest,
    to_str,
)
from mpmath.libmp.libmpf import dps_to_prec

from .errors import KindMismatchError, NotRepresentableError

__all__ = ["Scalar", "EXACT", "REAL", "DEFAULT_REAL_DIGITS", "MIN_REAL_DIGITS"]

EXACT = "exact"
REAL = "real"

DEFAULT_REAL_DIGITS = 50
MIN_REAL_DIGITS = 30

_FRACTION_LITERAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def _prec(digits: int) -> int:
    return dps_to_prec(digits)


class Scalar:
    """An immutable number of kind ``exact`` (rational) or ``real`` (float).

    Real values carry their own working precision of ``digits`` decimal
    digits; binary operations round correctly at the larger of the two
    operand precisions.  Plain ``int`` operands are accepted in either kind
    (an integer is representable exactly in both); anything else must be a
    ``Scalar`` of the same kind.
    """

    __slots__ = ("_kind", "_frac", "_raw", "_digits")

    def __init__(self) -> None:  # pragma: no cover - use the factory methods
        raise TypeError("use Scalar.exact(...) or Scalar.real(...)")

    # ---------------------------------------------------------------- factories

    @classmethod
    def _make_exact(cls, frac: Fraction) -> "Scalar":
        self = object.__new__(cls)
        self._kind = EXACT
        self._frac = frac
        self._raw = None
        self._digits = 0
        return self

    @classmethod
    def _make_real(cls, raw: tuple, digits: int) -> "Scalar":
        if digits < MIN_REAL_DIGITS:
            raise ValueError(f"real precision must be >= {MIN_REAL_DIGITS} digits, got {digits}")
        self = object.__new__(cls)
        self._kind = REAL
        self._frac = None
        self._raw = raw
        self._digits = digits
        return self

    @classmethod
    def exact(cls, value: int | Fraction | str) -> "Scalar":
        """Build an exact rational scalar from an int, Fraction, or literal."""
        if isinstance(value, bool):
            raise TypeError("bool is not a number")
        if isinstance(value, int):
            return cls._make_exact(Fraction(value))
        if isinstance(value, Fraction):
            return cls._make_exact(value)
        if isinstance(value, str):
            return cls._make_exact(_fraction_from_text(value))
        raise TypeError(f"cannot build an exact scalar from {type(value).__name__}")

    @classmethod
    def real(cls, value: int | Fraction | str, digits: int = DEFAULT_REAL_DIGITS) -> "Scalar":
        """Build a real scalar rounded to ``digits`` decimal digits."""
        prec = _prec(digits)
        if isinstance(value, bool):
            raise TypeError("bool is not a number")
        if isinstance(value, int):
            raw = from_int(value, prec, round_nearest)
        elif isinstance(value, Fraction):
            raw = from_rational(value.numerator, value.denominator, prec, round_nearest)
        elif isinstance(value, str):
            raw = from_str(value, prec, round_nearest)
        else:
            raise TypeError(f"cannot build a real scalar from {type(value).__name__}")
        return cls._make_real(raw, digits)

    @classmethod
    def parse(
        cls,
        text: str,
        digits: int = DEFAULT_REAL_DIGITS,
        force_exact: bool = False,
    ) -> "Scalar":
        """Parse a literal: integers and ``p/q`` are exact, decimals are real.

        With ``force_exact`` a decimal literal is converted to its exact
        rational value instead (e.g. ``-0.85`` becomes ``-17/20``).
        """
        text = text.strip()
        if _FRACTION_LITERAL.match(text):
            return cls.exact(text)
        if force_exact:
            return cls._make_exact(_fraction_from_text(text))
        return cls.real(text, digits)

    # ---------------------------------------------------------------- accessors

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def digits(self) -> int:
        """Working precision in decimal digits (real kind only)."""
        if self._kind != REAL:
            raise NotRepresentableError("exact scalars carry no floating precision")
        return self._digits

    @property
    def is_exact(self) -> bool:
        return self._kind == EXACT

    def as_fraction(self) -> Fraction:
        """The exact value.  Real scalars return their exact dyadic value."""
        if self._kind == EXACT:
            return self._frac
        sign, man, exp, _ = self._raw
        if man == 0:
            if exp != 0:  # inf/nan encode as man == 0, exp != 0
                raise NotRepresentableError("non-finite real scalar")
            return Fraction(0)
        value = Fraction(int(man)) * (Fraction(2) ** exp)
        return -value if sign else value

    def raw_mpf(self) -> tuple:
        """The underlying mpmath float tuple (real kind only)."""
        if self._kind != REAL:
            raise KindMismatchError("exact scalar has no floating payload")
        return self._raw

    def to_real(self, digits: int | None = None) -> "Scalar":
        """Explicit conversion to the real kind (or re-rounding of a real)."""
        if self._kind == REAL:
            d = self._digits if digits is None else digits
            if d == self._digits:
                return self
            raw = libmp.mpf_pos(self._raw, _prec(d), round_nearest)
            return Scalar._make_real(raw, d)
        d = DEFAULT_REAL_DIGITS if digits is None else digits
        return Scalar.real(self._frac, d)

    def is_zero(self) -> bool:
        if self._kind == EXACT:
            return self._frac == 0
        return self._raw == fzero

    def is_negative(self) -> bool:
        if self._kind == EXACT:
            return self._frac < 0
        return bool(self._raw[0]) and self._raw != fzero

    def is_integer(self) -> bool:
        if self._kind == EXACT:
            return self._frac.denominator == 1
        sign, man, exp, _ = self._raw
        return man == 0 and exp == 0 or (man != 0 and exp >= 0)

    def sign(self) -> int:
        if self.is_zero():
            return 0
        return -1 if self.is_negative() else 1

    # ---------------------------------------------------------------- arithmetic

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other._kind != self._kind:
                raise KindMismatchError(
                    f"cannot mix {self._kind} and {other._kind} scalars; convert explicitly"
                )
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            if self._kind == EXACT:
                return Scalar.exact(other)
            return Scalar.real(other, self._digits)
        return NotImplemented

    def _binop(self, other, exact_op, real_op):
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        if self._kind == EXACT:
            return Scalar._make_exact(exact_op(self._frac, rhs._frac))
        digits = max(self._digits, rhs._digits)
        raw = real_op(self._raw, rhs._raw, _prec(digits), round_nearest)
        return Scalar._make_real(raw, digits)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b, mpf_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b, mpf_sub)

    def __rsub__(self, other):
        result = self._binop(other, lambda a, b: b - a, lambda a, b, p, r: mpf_sub(b, a, p, r))
        return result

    def __mul__(self, other):
        return self._binop(other, lambda a, b: a * b, mpf_mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        if rhs.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        return self._binop(other, lambda a, b: a / b, mpf_div)

    def __rtruediv__(self, other):
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return rhs.__truediv__(self)

    def __neg__(self):
        if self._kind == EXACT:
            return Scalar._make_exact(-self._frac)
        return Scalar._make_real(mpf_neg(self._raw), self._digits)

    def __abs__(self):
        if self._kind == EXACT:
            return Scalar._make_exact(abs(self._frac))
        return Scalar._make_real(mpf_abs(self._raw), self._digits)

    def __pow__(self, exponent):
        if isinstance(exponent, int) and not isinstance(exponent, bool):
            if self._kind == EXACT:
                if exponent < 0 and self._frac == 0:
                    raise ZeroDivisionError("0 raised to a negative power")
                return Scalar._make_exact(self._frac ** exponent)
            raw = mpf_pow_int(self._raw, exponent, _prec(self._digits), round_nearest)
            return Scalar._make_real(raw, self._digits)
        if isinstance(exponent, Scalar):
            return self.pow_scalar(exponent)
        return NotImplemented

    def pow_scalar(self, exponent: "Scalar") -> "Scalar":
        """General power with a scalar exponent.

        Exact base with a non-integer exponent has no rational value and
        raises :class:`NotRepresentableError`; so does a negative real base.
        """
        if exponent.is_integer():
            if exponent._kind == EXACT:
                return self ** int(exponent._frac)
            exp_int = int(exponent.as_fraction())
            return self ** exp_int
        if self._kind == EXACT or exponent._kind == EXACT:
            raise NotRepresentableError(
                "non-integer power of an exact rational is not rational; convert to real first"
            )
        digits = max(self._digits, exponent._digits)
        try:
            raw = mpf_pow(self._raw, exponent._raw, _prec(digits), round_nearest)
        except libmp.ComplexResult as exc:
            raise NotRepresentableError("negative base with non-integer exponent") from exc
        return Scalar._make_real(raw, digits)

    # ---------------------------------------------------------------- comparison

    def _cmp(self, other) -> int:
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            raise TypeError(f"cannot compare Scalar with {type(other).__name__}")
        if self._kind == EXACT:
            if self._frac == rhs._frac:
                return 0
            return -1 if self._frac < rhs._frac else 1
        return mpf_cmp(self._raw, rhs._raw)

    def __eq__(self, other):
        if not isinstance(other, (Scalar, int)) or isinstance(other, bool):
            return NotImplemented
        return self._cmp(other) == 0

    def __ne__(self, other):
        result = self.__eq__(other)
        return NotImplemented if result is NotImplemented else not result

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    __hash__ = None  # mutable-free but equality spans int; hashing not needed

    # ---------------------------------------------------------------- rendering

    def decimal_str(self) -> str:
        """Decimal serialization that round-trips at the working precision."""
        if self._kind == EXACT:
            raise NotRepresentableError("exact scalars serialize as fractions; use str()")
        # digits + 3 uniquely identifies the underlying binary float
        return to_str(self._raw, self._digits + 3)

    def __str__(self) -> str:
        if self._kind == EXACT:
            return str(self._frac)
        return to_str(self._raw, self._digits)

    def __repr__(self) -> str:
        if self._kind == EXACT:
            return f"Scalar.exact({self._frac!r})"
        return f"Scalar.real('{to_str(self._raw, self._digits + 3)}', digits={self._digits})"


def _fraction_from_text(text: str) -> Fraction:
    """Exact rational value of an integer, fraction, or decimal literal."""
    text = text.strip()
    if _FRACTION_LITERAL.match(text):
        return Fraction(text)
    try:
        return Fraction(Decimal(text))
    except InvalidOperation as exc:
        raise ValueError(f"not a numeric literal: {text!r}") from exc
