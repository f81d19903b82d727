"""High-precision reference values, independent of the expansion machinery.

Every reference is either computed by two genuinely different routes that
must agree, or carries an explicit error bound:

* zeta(s): Euler-Maclaurin summation anchored at two different partial-sum
  lengths; the two anchors must agree to P-10 digits.
* z e^z E1(z): adaptive quadrature of the Stieltjes integral
  int_0^inf e^(-t)/(1+t/z) dt versus the convergent log/gamma_E series.
* truncation errors r_n: tail summation with a geometric bound for the
  convergent hypergeometric cases; for the divergent E1 series a direct
  quadrature of the tail integral, cross-checked against partial_sum - limit.

All arithmetic runs in throwaway mpmath contexts at the requested digits
plus guard digits; nothing touches mpmath's global precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath.libmp import mpf_pos, round_nearest
from mpmath.libmp.libmpf import dps_to_prec

from .combinatorics import bernoulli
from .errors import DegenerateParameterError, OracleError
from .families import FamilySpec
from .scalars import Scalar

__all__ = [
    "OracleConfig",
    "for_consumer",
    "zeta_reference",
    "zeta_em_value",
    "e1_reference",
    "e1_series_value",
    "e1_quadrature_value",
    "e1_remainder_integral",
    "remainder_exact",
    "partial_sum_value",
    "euler_maclaurin_zeta_tail",
]

# 124 digits; validated against the quadrature route by the test suite
_EULER_MASCHERONI = (
    "0.5772156649015328606065120900824024310421593359399235988057672348"
    "848677267776646709369470632917467495146314472498070824809605"
)


@dataclass(frozen=True)
class OracleConfig:
    """Precision target and safety knobs for reference computations."""

    digits: int = 80          # target decimal digits P
    quad_maxdegree: int = 10  # adaptive quadrature subdivision depth
    tail_guard: int = 5       # tails stop once |term| < 10^-(P+tail_guard) * ref


def for_consumer(digits: int) -> OracleConfig:
    """A config whose precision strictly dominates the consumer's."""
    return OracleConfig(digits=max(80, digits + 20))


_SCALAR_CACHE: dict[tuple, Scalar] = {}
_RAW_CACHE: dict[tuple, tuple] = {}


def _context(dps: int):
    ctx = mpmath.MPContext()
    ctx.dps = dps
    return ctx


def _ctx_value(ctx, x: Scalar):
    f = x.as_fraction()
    return ctx.mpf(f.numerator) / f.denominator


def _to_scalar(value, digits: int) -> Scalar:
    raw = mpf_pos(value._mpf_, dps_to_prec(digits), round_nearest)
    return Scalar._make_real(raw, digits)


def _param_key(family: FamilySpec) -> str:
    return ";".join(f"{k}={v}" for k, v in family.params)


# ------------------------------------------------------------------- zeta

def _require_zeta_domain(s: Scalar) -> None:
    if not s > 1:
        raise DegenerateParameterError(
            "s", f"the Dirichlet series converges only for s > 1, got s = {s}"
        )


def _zeta_em(ctx, sv, n0: int, P: int):
    """One Euler-Maclaurin evaluation anchored at partial sum length n0.

    Correction terms are added while they keep shrinking; returns
    (None, j) if they start growing before reaching 10^-(P+5) relative,
    which signals that n0 must be enlarged.
    """
    N = n0 + 2
    target = ctx.mpf(10) ** (-(P + 5))
    part = ctx.fsum(ctx.mpf(k) ** (-sv) for k in range(1, N))
    Ns = ctx.mpf(N)
    val = part + Ns ** (1 - sv) / (sv - 1) + Ns ** (-sv) / 2
    poch = sv  # (s)_(2j-1) for j = 1
    prev = ctx.inf
    j = 1
    while True:
        b = bernoulli(2 * j).as_fraction()
        t = ctx.mpf(b.numerator) / b.denominator * poch / ctx.factorial(2 * j) * Ns ** (-sv - 2 * j + 1)
        if abs(t) > abs(prev) or j > 4 * N:
            return None, j
        val += t
        if abs(t) < target * abs(val):
            return val, j
        prev = t
        poch = poch * (sv + 2 * j - 1) * (sv + 2 * j)
        j += 1


def _auto_anchor(P: int) -> int:
    # ~ P*ln(10)/(2*pi) scaled up 30%: keeps the correction terms shrinking
    return max(10, int(0.3665 * (P + 5) * 1.3) + 1)


def _zeta_value(ctx, s: Scalar, P: int):
    """Self-consistent zeta(s) as a context value at the context precision."""
    key = (str(s), P, ctx.dps)
    cached = _RAW_CACHE.get(key)
    if cached is not None:
        return ctx.make_mpf(cached)
    sv = _ctx_value(ctx, s)
    n0 = _auto_anchor(P)
    while True:
        v1, _ = _zeta_em(ctx, sv, n0, P)
        if v1 is not None:
            break
        n0 *= 2
    v2, _ = _zeta_em(ctx, sv, 2 * n0, P)
    if v2 is None:
        raise OracleError(f"Euler-Maclaurin corrections diverge at both anchors for s = {s}")
    if not abs(v1 - v2) <= ctx.mpf(10) ** (-(P - 10)) * abs(v1):
        raise OracleError(
            f"zeta self-consistency failure at s = {s}: anchors {n0} and {2 * n0} disagree"
        )
    _RAW_CACHE[key] = v2._mpf_
    return v2


def zeta_em_value(s: Scalar, digits: int, n0: int) -> Scalar:
    """A single Euler-Maclaurin evaluation anchored at n0 (no cross-check)."""
    _require_zeta_domain(s)
    ctx = _context(digits + 12)
    val, _ = _zeta_em(ctx, _ctx_value(ctx, s), n0, digits)
    if val is None:
        raise OracleError(
            f"correction terms grow before reaching the target at anchor n0 = {n0}; enlarge n0"
        )
    return _to_scalar(val, digits)


def zeta_reference(s: Scalar, config: OracleConfig = OracleConfig()) -> Scalar:
    """zeta(s) for s > 1, self-checked at two anchors to P-10 digits."""
    _require_zeta_domain(s)
    P = config.digits
    key = ("zeta", str(s), P)
    cached = _SCALAR_CACHE.get(key)
    if cached is None:
        ctx = _context(P + 12)
        cached = _to_scalar(_zeta_value(ctx, s, P), P)
        _SCALAR_CACHE[key] = cached
    return cached


# ------------------------------------------------------------------- E1

def _require_e1_domain(z: Scalar) -> None:
    if not z > 0:
        raise DegenerateParameterError(
            "z", f"the reference integral requires z > 0, got z = {z}"
        )


def _e1_series(ctx, zv, zf: float, P: int):
    g = ctx.mpf(_EULER_MASCHERONI)
    acc = -g - ctx.ln(zv)
    # the closing multiplication by z e^z amplifies any truncation tail by
    # ~ 10^(0.435 z), so the stop threshold must absorb that in advance
    floor = ctx.mpf(10) ** (-(P + 12 + int(0.44 * zf)))
    t = zv  # z^k / k!
    k = 1
    while True:
        contrib = t / k
        acc = acc + contrib if k % 2 == 1 else acc - contrib
        if k > zf and abs(contrib) < floor * max(abs(acc), ctx.one):
            break
        k += 1
        t = t * zv / k
    return zv * ctx.exp(zv) * acc


def e1_series_value(z: Scalar, digits: int) -> Scalar:
    """z e^z E1(z) from the convergent series -gamma_E - ln z + sum (-z)^k...

    The alternating sum cancels roughly 2 z log10(e) digits, so the working
    precision grows linearly with z; very large z is refused.
    """
    _require_e1_domain(z)
    zf = float(z.as_fraction())
    if zf > 5000:
        raise OracleError(f"series route needs ~0.9*z guard digits; z = {z} is too large")
    ctx = _context(digits + int(0.87 * zf) + 15)
    return _to_scalar(_e1_series(ctx, _ctx_value(ctx, z), zf, digits), digits)


def e1_quadrature_value(z: Scalar, digits: int, config: OracleConfig = OracleConfig()) -> Scalar:
    """z e^z E1(z) as int_0^inf e^(-t)/(1+t/z) dt by adaptive quadrature.

    The truncation point T makes the dropped tail smaller than
    10^-(digits+10); the quadrature error estimate plus that tail must fit
    the precision budget or the computation is rejected.
    """
    _require_e1_domain(z)
    ctx = _context(digits + 15)
    zv = _ctx_value(ctx, z)
    T = (digits + 10) * ctx.ln(10)
    val, err = ctx.quad(
        lambda t: ctx.exp(-t) / (1 + t / zv),
        [0, 1, 5, 20, T],
        error=True,
        maxdegree=config.quad_maxdegree,
    )
    budget = err + ctx.exp(-T)
    if not budget <= ctx.mpf(10) ** (-(digits + 2)) * max(abs(val), ctx.one):
        raise OracleError("quadrature error budget exceeded for the reference integral")
    return _to_scalar(val, digits)


def e1_reference(z: Scalar, config: OracleConfig = OracleConfig()) -> Scalar:
    """z e^z E1(z), dual-route checked to P-10 digits."""
    P = config.digits
    key = ("e1", str(z), P)
    cached = _SCALAR_CACHE.get(key)
    if cached is not None:
        return cached
    series = e1_series_value(z, P)
    quad = e1_quadrature_value(z, P, config)
    tol = Scalar.real(10, P) ** (10 - P) * abs(quad)
    if not abs(series - quad) <= tol:
        raise OracleError(
            f"series and quadrature routes for z e^z E1(z) disagree at z = {z}"
        )
    _SCALAR_CACHE[key] = quad
    return quad


def e1_remainder_integral(z: Scalar, n: int, digits: int,
                          config: OracleConfig = OracleConfig()) -> Scalar:
    """r_n of the E1 series in closed tail-integral form:

    r_n = -(-z)^(-(n+1)) * int_0^inf t^(n+1) e^(-t) / (1+t/z) dt.
    """
    _require_e1_domain(z)
    if n < 0:
        raise ValueError("index must be nonnegative")
    ctx = _context(digits + 15)
    zv = _ctx_value(ctx, z)
    # T - (n+1) ln T >= (digits+12) ln 10, by fixed-point iteration
    log10 = math.log(10.0)
    T = (digits + 12) * log10
    for _ in range(8):
        T = (digits + 12) * log10 + (n + 1) * math.log(max(T, 3.0))
    val, err = ctx.quad(
        lambda t: t ** (n + 1) * ctx.exp(-t) / (1 + t / zv),
        [0, n + 1, 3 * (n + 1) + 5, T],
        error=True,
        maxdegree=config.quad_maxdegree,
    )
    if not err <= ctx.mpf(10) ** (-(digits + 2)) * max(abs(val), ctx.one):
        raise OracleError("quadrature error budget exceeded for the remainder integral")
    return _to_scalar(-((-zv) ** (-(n + 1))) * val, digits)


# ------------------------------------------------------------------- partial sums

def _hyper_parts(family: FamilySpec):
    if family.name == "2f1":
        return (
            [family.param("a"), family.param("b")],
            [family.param("c")],
            family.param("z"),
        )
    tops = [v for k, v in family.params if k.startswith("alphas[")]
    bots = [v for k, v in family.params if k.startswith("betas[")]
    return tops, bots, family.param("z")


def _partial_value(ctx, family: FamilySpec, n: int):
    """Sum of terms 0..n recomputed at the context precision."""
    name = family.name
    if name == "zeta":
        sv = _ctx_value(ctx, family.param("s"))
        return ctx.fsum(ctx.mpf(k) ** (-sv) for k in range(1, n + 2))
    if name == "e1":
        zv = _ctx_value(ctx, family.param("z"))
        acc = ctx.one
        t = ctx.one
        for i in range(1, n + 1):
            t = t * i / (-zv)
            acc += t
        return acc
    tops, bots, z = _hyper_parts(family)
    tvals = [_ctx_value(ctx, x) for x in tops]
    bvals = [_ctx_value(ctx, x) for x in bots]
    zv = _ctx_value(ctx, z)
    acc = ctx.one
    t = ctx.one
    for i in range(n):
        factor = zv
        for a in tvals:
            factor *= a + i
        for b in bvals:
            factor /= b + i
        t = t * factor / (i + 1)
        acc += t
    return acc


def partial_sum_value(family: FamilySpec, n: int, config: OracleConfig = OracleConfig()) -> Scalar:
    """partial_sum(n) recomputed in real arithmetic at oracle precision."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    ctx = _context(config.digits + 10)
    return _to_scalar(_partial_value(ctx, family, n), config.digits)


# ------------------------------------------------------------------- remainders

def _zeta_remainder(family: FamilySpec, n: int, P: int) -> Scalar:
    s = family.param("s")
    _require_zeta_domain(s)
    ctx = _context(P + 15)
    partial = _partial_value(ctx, family, n)
    return _to_scalar(partial - _zeta_value(ctx, s, P), P)


def _hyper_tail(family: FamilySpec, n: int, P: int, config: OracleConfig) -> Scalar:
    """r_n = -sum_{nu>n} a_nu, summed directly; |z| < 1 makes this geometric."""
    tops, bots, z = _hyper_parts(family)
    if not abs(z) < 1:
        raise OracleError(f"tail summation requires |z| < 1, got z = {z}")
    ctx = _context(P + 20)
    tvals = [_ctx_value(ctx, x) for x in tops]
    bvals = [_ctx_value(ctx, x) for x in bots]
    zv = _ctx_value(ctx, z)

    def step(i: int):
        factor = zv
        for a in tvals:
            factor *= a + i
        for b in bvals:
            factor /= b + i
        return factor / (i + 1)

    t = ctx.one  # a_0
    for i in range(n + 1):
        t = t * step(i)  # now a_(n+1)
    first = abs(t)
    stop = ctx.mpf(10) ** (-(P + config.tail_guard + 2))
    acc = ctx.zero
    ratios = []
    i = n + 1
    while True:
        acc += t
        factor = step(i)
        ratios.append(abs(factor))
        t = t * factor
        i += 1
        if abs(t) < stop * max(abs(acc), first, ctx.one):
            break
        if i - n > 10 ** 7:
            raise OracleError("tail summation failed to reach the stop rule")
    rho = max(max(ratios[-8:]), abs(zv))
    if not rho < 1:
        raise OracleError("tail terms left the geometric regime; cannot bound the truncation")
    bound = abs(t) * rho / (1 - rho)
    if not bound <= ctx.mpf(10) ** (-(P + 2)) * max(abs(acc), first, ctx.one):
        raise OracleError("geometric tail bound exceeds the precision budget")
    return _to_scalar(-acc, P)


def _e1_remainder(family: FamilySpec, n: int, P: int, config: OracleConfig) -> Scalar:
    """Tail integral value, cross-checked against partial_sum - reference."""
    z = family.param("z")
    _require_e1_domain(z)
    zf = float(z.as_fraction())
    # the partial sum reaches ~ max_k k!/z^k, which the subtraction cancels
    peak = 0.0
    for k in range(n + 2):
        peak = max(peak, (math.lgamma(k + 1) - k * math.log(zf)) / math.log(10.0))
    guard = max(0, int(peak)) + 12
    integral = e1_remainder_integral(z, n, P, config)
    ctx = _context(P + guard)
    partial = _partial_value(ctx, family, n)
    reference = _ctx_value(ctx, e1_series_value(z, P + guard))
    differenced = _to_scalar(partial - reference, P)
    tol = Scalar.real(10, P) ** (10 - P) * abs(integral)
    if not abs(differenced - integral) <= tol:
        raise OracleError(
            f"remainder cross-check failed for z = {z}, n = {n}: "
            "tail integral and differenced limit disagree"
        )
    return integral


def remainder_exact(family: FamilySpec, n: int, config: OracleConfig = OracleConfig()) -> Scalar:
    """The true truncation error r_n = s_n - s at oracle precision."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    P = config.digits
    key = ("remainder", family.name, _param_key(family), n, P)
    cached = _SCALAR_CACHE.get(key)
    if cached is not None:
        return cached
    if family.name == "zeta":
        result = _zeta_remainder(family, n, P)
    elif family.name == "e1":
        result = _e1_remainder(family, n, P, config)
    else:
        result = _hyper_tail(family, n, P, config)
    _SCALAR_CACHE[key] = result
    return result


# ------------------------------------------------------------------- closed form

def euler_maclaurin_zeta_tail(s: Scalar, n: int, m: int) -> Scalar:
    """The classic finite Euler-Maclaurin tail for the Dirichlet series:

    sum_{mu=0}^{m} (-1)^(mu-1) (s)_(mu-1) B_mu / mu! * (n+2)^(1-s-mu),
    with the convention (s)_(-1) = 1/(s-1).  Identical, coefficient by
    coefficient, to the power-form remainder of the zeta family.
    """
    if s == 1:
        raise DegenerateParameterError("s", "degenerate parameter s = 1: the leading term has a pole")
    if n < 0 or m < 0:
        raise ValueError("indices must be nonnegative")
    base = Scalar.exact(n + 2) if s.is_exact else Scalar.real(n + 2, s.digits)
    poch = 1 / (s - 1)  # (s)_(-1)
    acc = None
    factorial = 1
    for mu in range(m + 1):
        if mu >= 1:
            poch = poch * (s + mu - 2)
            factorial *= mu
        b = bernoulli(mu)
        if not s.is_exact:
            b = b.to_real(s.digits)
        if b.is_zero():
            continue
        sign = -1 if mu % 2 == 0 else 1
        term = sign * poch * b / factorial * base.pow_scalar(1 - s - mu)
        acc = term if acc is None else acc + term
    return acc
