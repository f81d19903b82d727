"""Assemble and solve the triangular linear system for the remainder
coefficients gamma_0..gamma_m.

Column mu of the system is the truncated series U*eps^mu + V*phi(eps)^mu
("unit-vector probing"); row j is the coefficient of eps^j.  When U and V
carry an eps^-1 part, that row is identically zero and is asserted before
being discarded.  The right-hand side is (1, 0, ..., 0) and the matrix is
lower triangular, so forward substitution solves it; a vanishing pivot is a
genuine degeneracy of the expansion (z = 1, s = 1) and raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .combinatorics import pochhammer
from .errors import DegenerateParameterError
from .families import FamilySpec
from .scalars import Scalar
from .series import TruncatedLaurentSeries, series_add, series_mul, shift_substitute

__all__ = ["ResidualSystem", "GammaVector", "build_system", "solve_gamma",
           "residual_defect", "bernoulli_from_zeta"]


@dataclass(frozen=True)
class ResidualSystem:
    """The (m+1) x (m+1) system: matrix rows are equation orders 0..m."""

    matrix: tuple[tuple[Scalar, ...], ...]
    rhs: tuple[Scalar, ...]
    order: int


@dataclass(frozen=True)
class GammaVector:
    """Solved expansion coefficients, tied to the family they belong to."""

    family: FamilySpec
    order: int
    gammas: tuple[Scalar, ...]

    def gamma(self, mu: int) -> Scalar:
        if not 0 <= mu <= self.order:
            raise IndexError(f"gamma index {mu} outside 0..{self.order}")
        return self.gammas[mu]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self) -> Iterator[Scalar]:
        return iter(self.gammas)


def _unit(family: FamilySpec) -> Scalar:
    template = family.params[0][1]
    if template.is_exact:
        return Scalar.exact(1)
    return Scalar.real(1, template.digits)


def build_system(family: FamilySpec, m: int) -> ResidualSystem:
    """Probe the residual identity with unit coefficient vectors.

    Column mu is U*eps^mu + V*phi^mu truncated at order m.  Entries above
    the diagonal must vanish: for mu = j+1 this is a genuine cancellation
    between U and V, asserted here rather than assumed.
    """
    if m < 0:
        raise ValueError("expansion order must be >= 0")
    one = _unit(family)
    zero = one - one
    # Operators that start at eps^-1 cost the products one order of validity,
    # so probe one order deep enough that rows 0..m survive.
    work = m + 1
    u, v = family.residual_operators(work)
    columns = []
    for mu in range(m + 1):
        mono = TruncatedLaurentSeries.monomial(mu, work, one)
        column = series_add(series_mul(u, mono), series_mul(v, shift_substitute(mono, work)))
        assert column.truncation_order >= m, "column lost too many orders"
        if column.base_order < 0:
            assert column.coefficient(-1).is_zero(), "eps^-1 row must vanish identically"
        columns.append(column)

    matrix = []
    for j in range(m + 1):
        row = []
        for mu in range(m + 1):
            col = columns[mu]
            entry = col.coefficient(j) if j >= col.base_order else zero
            if mu > j:
                assert entry.is_zero(), f"entry ({j},{mu}) above the diagonal must vanish"
            row.append(entry)
        matrix.append(tuple(row))
    rhs = tuple([one] + [zero] * m)
    return ResidualSystem(matrix=tuple(matrix), rhs=rhs, order=m)


def _residual_tolerance(digits: int) -> Scalar:
    return Scalar.real(10, digits) ** (8 - digits)


def _check_residual(system: ResidualSystem, gammas: tuple[Scalar, ...], family: FamilySpec) -> None:
    # exact mode: identically zero; real mode: bounded by 10^(8-P) relative
    reference = _unit(family)
    for g in gammas:
        if abs(g) > reference:
            reference = abs(g)
    exact = gammas[0].is_exact
    tol = None if exact else _residual_tolerance(gammas[0].digits) * reference
    for j in range(system.order + 1):
        acc = -system.rhs[j]
        for mu in range(j + 1):
            acc = acc + system.matrix[j][mu] * gammas[mu]
        if exact:
            assert acc.is_zero(), f"residual row {j} must vanish exactly"
        else:
            assert abs(acc) <= tol, f"residual row {j} exceeds the rounding budget"


def solve_gamma(family: FamilySpec, m: int) -> GammaVector:
    """Forward substitution on the probed system, with a residual check."""
    system = build_system(family, m)
    gammas: list[Scalar] = []
    for j in range(m + 1):
        acc = system.rhs[j]
        for mu in range(j):
            acc = acc - system.matrix[j][mu] * gammas[mu]
        pivot = system.matrix[j][j]
        if pivot.is_zero():
            parameter, message = family.pivot_blame(j)
            raise DegenerateParameterError(parameter, message)
        gammas.append(acc / pivot)
    result = tuple(gammas)
    _check_residual(system, result, family)
    return GammaVector(family=family, order=m, gammas=result)


def _power_remainder(family: FamilySpec, vector: GammaVector, n: int) -> Scalar:
    eps = family.eps_at(n)
    acc = vector.gammas[-1]
    for g in reversed(vector.gammas[:-1]):
        acc = acc * eps + g
    return family.scale_at(n) * acc


def residual_defect(family: FamilySpec, vector: GammaVector, n: int) -> Scalar:
    """How far the ansatz misses the defining difference equation at n.

    Returns (r_hat(n+1) - r_hat(n)) / a_(n+1) - 1 evaluated in plain scalar
    arithmetic; it decays like n^-(m+1) when the coefficients are right.
    """
    if n < 0:
        raise ValueError("index must be nonnegative")
    step = _power_remainder(family, vector, n + 1) - _power_remainder(family, vector, n)
    return step / family.term(n + 1) - 1


def bernoulli_from_zeta(vector: GammaVector) -> tuple[Scalar, ...]:
    """Invert the zeta coefficients back to Bernoulli numbers.

    gamma_mu = (-1)^(mu-1) (s)_(mu-1) B_mu / mu!  with the convention
    (s)_(-1) = 1/(s-1), so B_mu = (-1)^(mu-1) mu! gamma_mu / (s)_(mu-1).
    """
    if vector.family.name != "zeta":
        raise ValueError("Bernoulli recovery is defined for the zeta family only")
    s = vector.family.param("s")
    out: list[Scalar] = []
    factorial = 1
    for mu, g in enumerate(vector.gammas):
        if mu == 0:
            out.append(-g * (s - 1))
            continue
        factorial *= max(mu, 1)
        sign = 1 if mu % 2 == 1 else -1
        out.append(sign * factorial * g / pochhammer(s, mu - 1))
    return tuple(out)
