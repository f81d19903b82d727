"""Exact combinatorial quantities: Bernoulli and Stirling numbers, Pochhammer
symbols, binomial coefficients.

The number tables grow lazily and monotonically; extension happens behind a
lock, reads are plain list indexing, so concurrent use behaves like a pure
function of the index.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .scalars import Scalar

__all__ = [
    "BernoulliTable",
    "StirlingTable",
    "bernoulli",
    "stirling_first",
    "pochhammer",
    "binomial_coefficient",
]


class BernoulliTable:
    """Bernoulli numbers B_0..B_K from the recurrence
    sum_{nu=0}^{n} binom(n+1, nu) B_nu = 0 with B_0 = 1.
    """

    def __init__(self) -> None:
        self._values: list[Fraction] = [Fraction(1)]
        self._lock = threading.Lock()

    @property
    def highest(self) -> int:
        return len(self._values) - 1

    def value(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("Bernoulli index must be nonnegative")
        if k > self.highest:
            self._extend(k)
        return self._values[k]

    def _extend(self, k: int) -> None:
        with self._lock:
            values = self._values
            for n in range(len(values), k + 1):
                acc = Fraction(0)
                for nu in range(n):
                    acc += math.comb(n + 1, nu) * values[nu]
                b = -acc / (n + 1)
                # sanity invariants checked on every extension
                if n == 1:
                    assert b == Fraction(-1, 2)
                if n >= 3 and n % 2 == 1:
                    assert b == 0, f"odd-index Bernoulli B_{n} must vanish"
                values.append(b)


class StirlingTable:
    """Signed Stirling numbers of the first kind via the triangle recurrence
    S(n+1, k) = S(n, k-1) - n*S(n, k), so that (z-n+1)_n = sum_k S(n,k) z^k.
    """

    def __init__(self) -> None:
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    @property
    def highest(self) -> int:
        return len(self._rows) - 1

    def value(self, n: int, k: int) -> int:
        if k < 0 or n < 0:
            raise ValueError("Stirling indices must be nonnegative")
        if k > n:
            raise ValueError(f"Stirling number S({n},{k}) requires k <= n")
        if n > self.highest:
            self._extend(n)
        return self._rows[n][k]

    def _extend(self, n: int) -> None:
        with self._lock:
            rows = self._rows
            while len(rows) <= n:
                prev = rows[-1]
                size = len(rows)  # row index being built
                row = [0] * (size + 1)
                for k in range(size + 1):
                    left = prev[k - 1] if k >= 1 else 0
                    right = prev[k] if k < size else 0
                    row[k] = left - (size - 1) * right
                assert row[size] == 1
                assert size == 0 or row[0] == 0
                rows.append(row)


_BERNOULLI = BernoulliTable()
_STIRLING = StirlingTable()


def bernoulli(k: int) -> Scalar:
    """Exact Bernoulli number B_k (B_1 = -1/2 convention)."""
    return Scalar.exact(_BERNOULLI.value(k))


def stirling_first(n: int, k: int) -> int:
    """Signed Stirling number of the first kind: coefficient of z^k in (z-n+1)_n."""
    return _STIRLING.value(n, k)


def pochhammer(x: Scalar, m: int) -> Scalar:
    """Rising factorial x(x+1)...(x+m-1); the empty product (m = 0) is 1."""
    if m < 0:
        raise ValueError("Pochhammer order must be nonnegative")
    if x.is_exact:
        acc = Fraction(1)
        base = x.as_fraction()
        for i in range(m):
            acc *= base + i
        return Scalar.exact(acc)
    acc = Scalar.real(1, x.digits)
    for i in range(m):
        acc = acc * (x + i)
    return acc


def binomial_coefficient(n: Scalar, k: int) -> Scalar:
    """Generalized binomial coefficient binom(n, k) = (n-k+1)_k / k!."""
    if k < 0:
        raise ValueError("binomial index must be nonnegative")
    num = pochhammer(n - (k - 1), k)
    return num / math.factorial(k)
