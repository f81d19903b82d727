"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "TailcutError",
    "KindMismatchError",
    "NotRepresentableError",
    "DegenerateParameterError",
    "DegeneratePadeError",
    "PoleError",
    "OracleError",
]


class TailcutError(Exception):
    """Base class for all errors raised by this package."""


class KindMismatchError(TailcutError):
    """Arithmetic attempted between exact and real scalars without conversion."""


class NotRepresentableError(TailcutError):
    """A value has no exact rational representation (e.g. an irrational power)."""


class DegenerateParameterError(TailcutError):
    """A family parameter sits on a genuine singularity of the expansion.

    The message names the offending parameter, e.g. ``z = 1`` for the Gauss
    series or ``s = 1`` for the Dirichlet series.
    """

    def __init__(self, parameter: str, message: str) -> None:
        super().__init__(message)
        self.parameter = parameter


class DegeneratePadeError(TailcutError):
    """The Toeplitz denominator system is singular: degenerate Pade table."""


class PoleError(TailcutError):
    """A rational approximant was evaluated at a zero of its denominator."""


class OracleError(TailcutError):
    """A high-precision self-check failed (route disagreement or divergence)."""
