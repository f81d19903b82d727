"""Command line front end.

Subcommands
-----------
coeffs   solve and print the expansion coefficients (optionally factorial form)
approx   remainder estimates for one n or an n-range, compared to the oracle
table    CSV/JSON sweep over an n-range (same rows as approx)
check    built-in validation suites: bernoulli, order, pade22, oracle

Parameter literals written as integers or fractions (``--z -17/20``) select
exact rational arithmetic end to end; decimal literals select real
arithmetic at ``--precision`` digits.  Mixing the two styles is rejected;
``--exact`` converts decimals to their exact rational values instead.

Exit codes: 0 success; 1 a check suite failed; 2 degenerate or invalid
input; 3 oracle self-check failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
import time
from fractions import Fraction

from .combinatorics import bernoulli
from .errors import (
    DegenerateParameterError,
    DegeneratePadeError,
    KindMismatchError,
    NotRepresentableError,
    OracleError,
    PoleError,
)
from .families import FamilySpec, make_2f1, make_e1, make_pfq, make_zeta
from .oracle import OracleConfig, e1_reference, for_consumer, partial_sum_value, remainder_exact, zeta_reference
from .resummation import (
    gamma_to_factorial,
    pade_from_series,
    remainder_factorial,
    remainder_power,
)
from .scalars import DEFAULT_REAL_DIGITS, MIN_REAL_DIGITS, Scalar, _FRACTION_LITERAL
from .solver import bernoulli_from_zeta, residual_defect, solve_gamma

_COLUMNS = ["family", "params", "n", "m", "method", "approx", "oracle",
            "corrected", "abs_err", "rel_err", "seconds"]

_FAMILY_FLAGS = {
    "zeta": ("s",),
    "2f1": ("a", "b", "c", "z"),
    "pfq": ("alphas", "betas", "z"),
    "e1": ("z",),
}


# ------------------------------------------------------------------ parsing

def _require(args, flag: str) -> str:
    value = getattr(args, flag)
    if value is None:
        raise ValueError(f"family {args.family} requires --{flag}")
    return value


def _split_list(text: str) -> list[str]:
    return [piece.strip() for piece in text.split(",") if piece.strip()]


def _parse_group(texts: list[str], args) -> list[Scalar]:
    """One consistent scalar kind for the whole parameter set."""
    digits = args.precision
    if digits < MIN_REAL_DIGITS:
        raise ValueError(f"--precision must be at least {MIN_REAL_DIGITS} digits")
    if args.exact:
        return [Scalar.parse(t, digits, force_exact=True) for t in texts]
    fraction_like = [bool(_FRACTION_LITERAL.match(t.strip())) for t in texts]
    if any(fraction_like) and not all(fraction_like):
        raise ValueError(
            "mixed fraction and decimal parameter literals; use one style or pass --exact"
        )
    return [Scalar.parse(t, digits) for t in texts]


def _build_family(args) -> FamilySpec:
    name = args.family
    if name is None:
        raise ValueError("--family is required")
    allowed = _FAMILY_FLAGS[name]
    for flag in ("s", "a", "b", "c", "z", "alphas", "betas"):
        if getattr(args, flag, None) is not None and flag not in allowed:
            raise ValueError(f"--{flag} does not apply to family {name}")
    if name == "zeta":
        (s,) = _parse_group([_require(args, "s")], args)
        return make_zeta(s)
    if name == "2f1":
        texts = [_require(args, f) for f in ("a", "b", "c", "z")]
        a, b, c, z = _parse_group(texts, args)
        return make_2f1(a, b, c, z)
    if name == "e1":
        (z,) = _parse_group([_require(args, "z")], args)
        return make_e1(z)
    alphas_text = _split_list(_require(args, "alphas"))
    betas_text = _split_list(args.betas) if args.betas else []
    z_text = _require(args, "z")
    scalars = _parse_group(alphas_text + betas_text + [z_text], args)
    na, nb = len(alphas_text), len(betas_text)
    return make_pfq(scalars[:na], scalars[na:na + nb], scalars[-1])


def _parse_ns(args, require_range: bool) -> list[int]:
    if args.n is not None and args.n_range is not None:
        raise ValueError("give either --n or --n-range, not both")
    if args.n_range is None and require_range:
        raise ValueError("this command requires --n-range a..b")
    if args.n_range is not None:
        parts = args.n_range.split("..")
        if len(parts) != 2:
            raise ValueError("--n-range must look like a..b")
        try:
            lo, hi = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError("--n-range bounds must be integers") from exc
        if lo < 0 or hi < lo:
            raise ValueError("--n-range must be a nonempty nonnegative range")
        return list(range(lo, hi + 1))
    if args.n is None:
        raise ValueError("give --n or --n-range")
    if args.n < 0:
        raise ValueError("n must be nonnegative")
    return [args.n]


def _parse_methods(args, m: int) -> tuple[list[str], int, int]:
    methods = ["power", "factorial", "pade"] if args.method == "all" else [args.method]
    if (args.L is not None or args.M is not None) and "pade" not in methods:
        raise ValueError("--L/--M only apply when the pade method is selected")
    L = args.L if args.L is not None else m // 2
    M = args.M if args.M is not None else m // 2
    if "pade" in methods:
        if L < 0 or M < 0:
            raise ValueError("pade degrees must be nonnegative")
        if L + M > m:
            raise ValueError(f"pade degrees need L+M <= m, got [{L}/{M}] with m = {m}")
    return methods, L, M


# ------------------------------------------------------------------ reports

def _params_text(family: FamilySpec) -> str:
    return ";".join(f"{k}={v}" for k, v in family.params)


def _fmt(x: Scalar, digits: int) -> str:
    return x.to_real(digits).decimal_str()


def _partial_for_report(family: FamilySpec, n: int, config: OracleConfig) -> Scalar:
    try:
        return family.partial_sum(n).to_real(config.digits)
    except NotRepresentableError:
        # exact zeta with non-integer s: terms are irrational, so report
        # the partial sum at oracle precision instead
        return partial_sum_value(family, n, config)


def _compute_rows(args, family: FamilySpec, ns: list[int]) -> list[dict]:
    m = args.m
    if m < 0:
        raise ValueError("--m must be nonnegative")
    methods, L, M = _parse_methods(args, m)
    vector = solve_gamma(family, m)
    factorial = gamma_to_factorial(vector) if "factorial" in methods else None
    pade = pade_from_series(vector.gammas, L, M) if "pade" in methods else None
    config = for_consumer(args.precision)
    params = _params_text(family)
    timing = getattr(args, "timing", False)
    rows = []
    for n in ns:
        oracle_r = remainder_exact(family, n, config)
        partial = _partial_for_report(family, n, config)
        for method in methods:
            start = time.perf_counter()
            if method == "power":
                approx = remainder_power(family, vector, n)
            elif method == "factorial":
                approx = remainder_factorial(family, factorial, n)
            else:
                approx = family.scale_at(n) * pade.evaluate(family.eps_at(n))
            elapsed = time.perf_counter() - start
            approx_r = approx.to_real(config.digits)
            abs_err = abs(approx_r - oracle_r)
            rel_err = None if oracle_r.is_zero() else abs_err / abs(oracle_r)
            rows.append({
                "family": family.name,
                "params": params,
                "n": n,
                "m": m,
                "method": f"pade[{L}/{M}]" if method == "pade" else method,
                "approx": _fmt(approx, args.precision),
                "oracle": _fmt(oracle_r, args.precision),
                "corrected": _fmt(partial - approx_r, args.precision),
                "abs_err": _fmt(abs_err, args.precision),
                "rel_err": "" if rel_err is None else _fmt(rel_err, args.precision),
                "seconds": f"{elapsed:.6f}" if timing else "0",
            })
    return rows


def _write_output(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_rows(rows: list[dict], args) -> None:
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_COLUMNS)
        for row in rows:
            writer.writerow([row[c] for c in _COLUMNS])
        text = buf.getvalue()
    elif args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        lines = []
        for row in rows:
            lines.append(f"{row['family']} {row['params']} n={row['n']} m={row['m']} {row['method']}")
            lines.append(f"  approx    = {row['approx']}")
            lines.append(f"  oracle    = {row['oracle']}")
            lines.append(f"  corrected = {row['corrected']}")
            lines.append(f"  abs_err   = {row['abs_err']}  rel_err = {row['rel_err']}")
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)


# ------------------------------------------------------------------ commands

def cmd_coeffs(args) -> int:
    family = _build_family(args)
    if args.m < 0:
        raise ValueError("--m must be nonnegative")
    vector = solve_gamma(family, args.m)
    factorial = gamma_to_factorial(vector) if args.factorial else None

    def render(x: Scalar) -> str:
        return str(x) if x.is_exact else x.decimal_str()

    if args.format == "json":
        payload: dict = {
            "family": family.name,
            "params": _params_text(family),
            "m": args.m,
            "gamma": [render(g) for g in vector.gammas],
        }
        if factorial is not None:
            payload["gamma_factorial"] = [render(g) for g in factorial.coefficients]
        text = json.dumps(payload, indent=2) + "\n"
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["mu", "gamma"] + (["gamma_factorial"] if factorial is not None else [])
        writer.writerow(header)
        for mu, g in enumerate(vector.gammas):
            row = [mu, render(g)]
            if factorial is not None:
                row.append(render(factorial.coefficients[mu]))
            writer.writerow(row)
        text = buf.getvalue()
    else:
        lines = [f"family: {family.name}  params: {_params_text(family)}  m: {args.m}"]
        for mu, g in enumerate(vector.gammas):
            lines.append(f"gamma[{mu}] = {render(g)}")
        if factorial is not None:
            for mu, g in enumerate(factorial.coefficients):
                lines.append(f"gamma_tilde[{mu}] = {render(g)}")
        text = "\n".join(lines) + "\n"
    _write_output(text, args.out)
    return 0


def cmd_approx(args) -> int:
    family = _build_family(args)
    ns = _parse_ns(args, require_range=False)
    _emit_rows(_compute_rows(args, family, ns), args)
    return 0


def cmd_table(args) -> int:
    family = _build_family(args)
    ns = _parse_ns(args, require_range=True)
    _emit_rows(_compute_rows(args, family, ns), args)
    return 0


# ------------------------------------------------------------------ check suites

def _suite_bernoulli(args) -> tuple[bool, str]:
    limit = args.max
    if limit < 0:
        raise ValueError("--max must be nonnegative")
    vector = solve_gamma(make_zeta(Scalar.exact(3)), limit)
    for mu, value in enumerate(bernoulli_from_zeta(vector)):
        if not (value - bernoulli(mu)).is_zero():
            return False, f"gamma -> Bernoulli inversion broke at mu = {mu}"
    return True, f"inversion exact through mu = {limit}"


def _defect_slope(family: FamilySpec, m: int) -> float:
    vector = solve_gamma(family, m)
    xs, ys = [], []
    for n in range(20, 61):
        mag = abs(float(residual_defect(family, vector, n).as_fraction()))
        if mag == 0.0:
            continue
        xs.append(math.log(n))
        ys.append(math.log(mag))
    count = len(xs)
    mean_x = sum(xs) / count
    mean_y = sum(ys) / count
    sxx = sum((x - mean_x) ** 2 for x in xs)
    sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    return sxy / sxx


def _order_defaults() -> list[FamilySpec]:
    half = Fraction(1, 2)
    return [
        make_zeta(Scalar.exact(2)),
        make_2f1(Scalar.exact(Fraction(2, 3)), Scalar.exact(Fraction(6, 5)),
                 Scalar.exact(Fraction(7, 4)), Scalar.exact(Fraction(-1, 5))),
        make_pfq([Scalar.exact(half), Scalar.exact(Fraction(2, 3)), Scalar.exact(Fraction(5, 4))],
                 [Scalar.exact(Fraction(7, 6)), Scalar.exact(Fraction(8, 7))],
                 Scalar.exact(Fraction(-3, 5))),
        make_e1(Scalar.exact(3)),
    ]


def _suite_order(args) -> tuple[bool, str]:
    if args.family is not None:
        families = [_build_family(args)]
    else:
        families = _order_defaults()
    orders = [args.m] if args.m is not None else [2, 4, 6]
    ok = True
    details = []
    for family in families:
        for m in orders:
            slope = _defect_slope(family, m)
            target = -(m + 1)
            good = abs(slope - target) <= 0.3
            ok = ok and good
            note = "" if good else " [out of band]"
            details.append(f"{family.name} m={m}: {slope:.2f} vs {target}+-0.3{note}")
    return ok, "; ".join(details)


def _suite_pade22(args) -> tuple[bool, str]:
    if args.family is not None and args.family != "e1":
        raise ValueError("the pade22 suite applies to the e1 family")
    if args.z is not None:
        # the identity is algebraic, so check it in exact arithmetic
        zs = [Scalar.parse(args.z, max(args.precision, MIN_REAL_DIGITS), True)]
    else:
        rng = random.Random(20260814)
        zs = []
        while len(zs) < 8:
            num = rng.randrange(-40, 41)
            den = rng.randrange(1, 13)
            if num != 0:
                zs.append(Scalar.exact(Fraction(num, den)))
    for z in zs:
        vector = solve_gamma(make_e1(z), 4)
        approximant = pade_from_series(vector.gammas, 2, 2)
        p, q = approximant.numerator, approximant.denominator
        # clearing (n+1)^2 must reproduce the closed n-form:
        # numerator n^2 + (z-1)n + z, denominator n^2 + (2z-1)n + z^2
        checks = [
            p[0] - 1,
            2 * p[0] + p[1] - (z - 1),
            p[0] + p[1] + p[2] - z,
            q[0] - 1,
            2 * q[0] + q[1] - (2 * z - 1),
            q[0] + q[1] + q[2] - z * z,
        ]
        if any(not c.is_zero() for c in checks):
            return False, f"closed-form identity broke at z = {z}"
    return True, f"[2/2] n-form identity exact for {len(zs)} rational z"


def _suite_oracle(args) -> tuple[bool, str]:
    config = OracleConfig(digits=60)
    for z in (1, 2, 5):
        e1_reference(Scalar.exact(z), config)
    zeta_reference(Scalar.exact(2), config)
    zeta_reference(Scalar.real("1.1", 50), config)
    return True, "E1 dual routes (z in {1,2,5}) and zeta anchors (s in {2, 1.1}) agree"


_SUITES = {
    "bernoulli": _suite_bernoulli,
    "order": _suite_order,
    "pade22": _suite_pade22,
    "oracle": _suite_oracle,
}


def cmd_check(args) -> int:
    chosen = list(_SUITES) if args.suite == "all" else [args.suite]
    lines = []
    ok = True
    for name in chosen:
        passed, detail = _SUITES[name](args)
        ok = ok and passed
        lines.append(f"{name}: {'pass' if passed else 'FAIL'} ({detail})")
    _write_output("\n".join(lines) + "\n", args.out)
    return 0 if ok else 1


# ------------------------------------------------------------------ wiring

def _family_options(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument("--family", choices=("zeta", "2f1", "pfq", "e1"), required=required,
                        help="series family")
    for flag in ("s", "a", "b", "c", "z"):
        parser.add_argument(f"--{flag}", help=f"parameter {flag} (fraction or decimal literal)")
    parser.add_argument("--alphas", help="comma-separated numerator parameters (pfq)")
    parser.add_argument("--betas", help="comma-separated denominator parameters (pfq)")
    parser.add_argument("--precision", type=int, default=DEFAULT_REAL_DIGITS,
                        help="decimal digits for real-mode arithmetic and report values")
    parser.add_argument("--exact", action="store_true",
                        help="force exact rationals (decimal literals are converted)")


def _output_options(parser: argparse.ArgumentParser, default_format: str) -> None:
    parser.add_argument("--format", choices=("json", "csv", "text"), default=default_format,
                        help=f"output format (default {default_format})")
    parser.add_argument("--out", help="write output to a file instead of stdout")


def _range_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=int, required=True, help="expansion order")
    parser.add_argument("--n", type=int, help="single truncation index")
    parser.add_argument("--n-range", help="inclusive index range a..b")
    parser.add_argument("--method", choices=("power", "factorial", "pade", "all"),
                        default="all", help="remainder evaluation method(s)")
    parser.add_argument("--L", type=int, help="pade numerator degree (default m//2)")
    parser.add_argument("--M", type=int, help="pade denominator degree (default m//2)")
    parser.add_argument("--timing", action="store_true",
                        help="fill the seconds column (otherwise 0, keeping output reproducible)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tailcut",
        description="Asymptotic remainder estimates for series truncation errors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    coeffs = sub.add_parser("coeffs", help="solve and print expansion coefficients")
    _family_options(coeffs, required=True)
    coeffs.add_argument("--m", type=int, required=True, help="expansion order")
    coeffs.add_argument("--factorial", action="store_true",
                        help="also print the factorial-series coefficients")
    _output_options(coeffs, default_format="text")
    coeffs.set_defaults(handler=cmd_coeffs)

    approx = sub.add_parser("approx", help="remainder estimates with oracle comparison")
    _family_options(approx, required=True)
    _range_options(approx)
    _output_options(approx, default_format="text")
    approx.set_defaults(handler=cmd_approx)

    table = sub.add_parser("table", help="sweep an n-range and emit CSV/JSON rows")
    _family_options(table, required=True)
    _range_options(table)
    _output_options(table, default_format="csv")
    table.set_defaults(handler=cmd_table)

    check = sub.add_parser("check", help="run built-in validation suites")
    check.add_argument("suite", nargs="?", default="all",
                       choices=("all", "bernoulli", "order", "pade22", "oracle"))
    _family_options(check, required=False)
    check.add_argument("--m", type=int, help="expansion order for the order suite")
    check.add_argument("--max", type=int, default=20,
                       help="highest Bernoulli index for the bernoulli suite")
    check.add_argument("--out", help="write output to a file instead of stdout")
    check.set_defaults(handler=cmd_check)

    return parser


_VALUE_FLAGS = frozenset({"--s", "--a", "--b", "--c", "--z", "--alphas", "--betas"})


def _merge_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-17/20" as an option; fold it into the flag token
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if token in _VALUE_FLAGS and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{token}={nxt}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_merge_negative_values(list(argv)))
    try:
        return args.handler(args)
    except (DegenerateParameterError, DegeneratePadeError, KindMismatchError,
            NotRepresentableError, PoleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OracleError as exc:
        print(f"oracle error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
