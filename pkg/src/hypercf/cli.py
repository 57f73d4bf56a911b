"""Command-line front end.

Exit codes: 0 success, 1 a mathematical verification failed, 2 usage or parse
error.  With ``--json`` exactly one JSON document goes to stdout; progress and
diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Callable

from . import __version__
from .contfrac import (
    CFError,
    QuadTriple,
    continuant,
    eval_cf,
    expand_rational,
    expand_series,
    growth_stat,
    periodic_to_equation,
    quad_expand,
    quad_tail_step,
)
from .ffield import GF, Field, FieldError, from_rational_literal
from .hyperq import (
    A_sequence,
    HyperError,
    K_continuant,
    certify_pattern,
    growth_peaks,
    is_hyperquadratic_witness,
    mills_robbins_check,
    perfect_growth_check,
    rqe_divides,
    rqe_expansion,
    rqe_H,
    rqe_params,
    rqe_root,
    scan_primes,
    theorem1_solve,
    v_sequence,
)
from .laurent import (
    LaurentSeries,
    NewtonError,
    PrecisionError,
    format_series,
    newton_root,
    series_from_rational,
    series_inv,
    series_polypart,
)
from .parse import ParseError, parse_modulus, parse_rational, parse_tpoly, parse_xpoly
from .polyring import RationalFunc, TPoly, XPoly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _log(msg: str):
    print(msg, file=sys.stderr, flush=True)


def _emit(args, doc: dict, text: str):
    if args.json:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _field(args) -> Field:
    p = args.p
    if args.ext_modulus:
        mod = parse_modulus(args.ext_modulus, p)
        if len(mod) < 3 or mod[-1] != 1:
            raise UsageError("--ext-modulus must be monic of degree >= 2")
        return GF(p, len(mod) - 1, mod)
    return GF(p)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_expand_rational(args) -> int:
    F = _field(args)
    num = parse_tpoly(args.num, F)
    den = parse_tpoly(args.den, F)
    if den.is_zero():
        raise UsageError("--den must be nonzero")
    e = expand_rational(RationalFunc(num, den))
    ok = eval_cf(e.quotients) == RationalFunc(num, den)
    doc = e.to_json() | {"round_trip": ok}
    _emit(args, doc, "[" + ", ".join(map(str, e.quotients)) + "]")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_expand_root(args) -> int:
    F = _field(args)
    s = parse_xpoly(args.poly_x, F)
    seed = parse_tpoly(args.seed_poly, F)
    alpha = newton_root(s, seed, args.terms)
    e = expand_series(alpha, args.max_quotients)
    doc = e.to_json() | {"root": format_series(alpha, 12)}
    if e.certified >= 2:
        doc["growth"] = growth_stat(e).to_json()
    _emit(args, doc, f"root = {format_series(alpha, 8)}\n"
                     f"{e.certified} certified quotients:\n" + ", ".join(map(str, e.quotients)))
    return EXIT_OK


def cmd_quad_expand(args) -> int:
    F = _field(args)
    t = QuadTriple.make(*(parse_tpoly(x, F) for x in (args.A, args.B, args.C)))
    seed = parse_tpoly(args.seed_poly, F)
    res = quad_expand(t, seed, args.bound)
    eq = periodic_to_equation(res.preperiod, res.period)
    ok = eq.is_proportional(QuadTriple.make(*t))
    doc = {
        "p": F.p,
        "n": F.n,
        "triple": [str(x) for x in t],
        "preperiod": [str(a) for a in res.preperiod],
        "period": [str(a) for a in res.period],
        "equation_proportional": ok,
    }
    text = (f"preperiod [{', '.join(map(str, res.preperiod))}]\n"
            f"period    [{', '.join(map(str, res.period))}]")
    _emit(args, doc, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_rqe_verify(args) -> int:
    r = rqe_divides(args.p)
    _log(f"p = {args.p}: {r.seconds:.3f} s")
    doc = r.to_json() | {"H": str(rqe_H(args.p))}
    _emit(args, doc, f"p = {args.p}: H divisible by P: {r.divides} (re-multiplied: {r.remultiplied})")
    return EXIT_OK if r.divides and r.remultiplied else EXIT_FAIL


def cmd_rqe_pattern(args) -> int:
    p = args.p
    j = (p - 1) // 6
    e, alpha = rqe_expansion(p, args.quotients)
    rep = certify_pattern(p, e, alpha)
    growth = perfect_growth_check(p, 2 * j, 3 * j, e)
    doc = rep.to_json() | {"degrees": e.degrees[: e.certified], "growth": growth.to_json()}
    text = (f"p = {p}: {rep.checked} quotients, pattern {'ok' if rep.ok else 'FAILED'}; "
            f"growth window sup {growth.window_sup} (expected {growth.expected})")
    _emit(args, doc, text)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_scan(args) -> int:
    t0 = time.perf_counter()
    rep = scan_primes(args.pmax, args.workers)
    for r in rep.results:
        _log(f"p = {r.p}: {'ok' if r.divides and r.remultiplied else 'FAIL'} ({r.seconds:.2f} s)")
    _log(f"total {time.perf_counter() - t0:.2f} s")
    text = "\n".join(f"{r.p}: {r.divides and r.remultiplied}" for r in rep.results)
    _emit(args, rep.to_json(), text)
    return EXIT_OK if rep.all_divide else EXIT_FAIL


def cmd_theorem1(args) -> int:
    F = _field(args)
    A, B, C = (parse_rational(x, F) for x in (args.A, args.B, args.C))
    res = theorem1_solve(A, B, C, F)
    doc = {"p": F.p, "r": res.r, "found": res.found, "verified": res.verified,
           "kernel_dim": res.kernel_dim, "H": None if res.H is None else str(res.H)}
    _emit(args, doc, f"r = {res.r}\nH = {res.H}\nverified: {res.verified}")
    return EXIT_OK if res.verified else EXIT_FAIL


def cmd_mills_robbins(args) -> int:
    rep = mills_robbins_check(args.precision, args.v_squared)
    doc = rep.to_json() | {"beta": format_series(rep.beta, 12)}
    _emit(args, doc, f"v = {rep.v}, beta = {format_series(rep.beta, 8)}\n"
                     f"residual zero: {rep.residual_zero}, beta over F_13: {rep.beta_in_prime_field}")
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_examples(args) -> int:
    ids = [args.only] if args.only else None
    if ids and ids[0] not in EXAMPLES:
        raise UsageError(f"unknown example id {ids[0]!r}")
    results = run_examples(ids, progress=_log)
    doc = {"results": results, "passed": sum(r["pass"] for r in results), "total": len(results)}
    text = "\n".join(f"{'PASS' if r['pass'] else 'FAIL'}  {r['id']}" + (f"  ({r['detail']})" if r["detail"] else "")
                     for r in results)
    _emit(args, doc, text)
    return EXIT_OK if all(r["pass"] for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------
# golden examples
# ---------------------------------------------------------------------------

EXAMPLES: dict[str, Callable[[], tuple[bool, str]]] = {}


def _example(name):
    def deco(fn):
        EXAMPLES[name] = fn
        return fn
    return deco


def _strs(xs):
    return [str(x) for x in xs]


F13_NUM, F13_DEN = "(T^2-1)^4", "2*T^7+2*T^5+T^3-T"
F13_CF = ["7*T", "10*T", "5*T", "12*T", "9*T", "11*T", "T", "5*T"]


@_example("f4-mul")
def _ex_f4_mul():
    F = GF(2, 2, (1, 1, 1))
    u = F.gen
    return u * u == u + 1, f"u*u = {u * u}"


@_example("f13-divmod")
def _ex_f13_divmod():
    F = GF(13)
    q, _ = divmod(parse_tpoly(F13_NUM, F), parse_tpoly(F13_DEN, F))
    return str(q) == "7*T", f"quotient {q}"


@_example("f13-rational")
def _ex_f13_rational():
    F = GF(13)
    f = RationalFunc(parse_tpoly(F13_NUM, F), parse_tpoly(F13_DEN, F))
    e = expand_rational(f)
    return _strs(e.quotients) == F13_CF and eval_cf(e.quotients) == f, str(_strs(e.quotients))


@_example("f13-eval")
def _ex_f13_eval():
    F = GF(13)
    f = eval_cf([parse_tpoly(a, F) for a in F13_CF])
    return f == RationalFunc(parse_tpoly(F13_NUM, F), parse_tpoly(F13_DEN, F)), str(f)


@_example("continuant-base")
def _ex_continuant():
    F = GF(5)
    one = TPoly.one(F)
    x = TPoly.T(F) * 3
    return continuant([], one) == one and continuant([x], one) == x, ""


@_example("series-geometric")
def _ex_geometric():
    F = GF(7)
    f = RationalFunc(TPoly.one(F), parse_tpoly("T-1", F))
    s = series_from_rational(f, 20)
    ok = s.terms() == {-k: 1 for k in range(1, 21)}
    inv = series_inv(LaurentSeries.from_tpoly(parse_tpoly("T-1", F)), 20)
    a, rest = series_polypart(s)
    return ok and inv == s and a.is_zero() and rest == s, format_series(s, 4)


@_example("rqe-root-p7")
def _ex_rqe_root():
    alpha = rqe_root(7, 40)
    a, rest = series_polypart(alpha)
    ok = str(a) == "2*T" and rest.valuation == -1 and int(rest.lead) == 6
    return ok, format_series(alpha, 4)


@_example("golden-root")
def _ex_golden_root():
    F = GF(3)
    w = newton_root(parse_xpoly("X^2-T*X-1", F), TPoly.T(F), 60)
    return w.agrees_with(LaurentSeries.from_tpoly(TPoly.T(F)) + series_inv(w)), format_series(w, 4)


@_example("golden-50")
def _ex_golden_50():
    F = GF(3)
    w = newton_root(parse_xpoly("X^2-T*X-1", F), TPoly.T(F), 200)
    e = expand_series(w, 50)
    return e.certified == 50 and all(str(a) == "T" for a in e.quotients), f"{e.certified} quotients"


@_example("frobenius-family")
def _ex_frob_family():
    bad = []
    for p in (2, 3, 5):
        F = GF(p)
        alpha = newton_root(parse_xpoly(f"X^{p + 1}-T*X^{p}-1", F), TPoly.T(F), 8 * (1 + p + p * p) + 16)
        e = expand_series(alpha, 3)
        if _strs(e.quotients) != ["T", f"T^{p}", f"T^{p * p}"]:
            bad.append(p)
    return not bad, f"failing p: {bad}" if bad else ""


def _f2_cubic(terms=1200, n=120):
    F = GF(2)
    alpha = newton_root(parse_xpoly("X^3+(T^2+1)*X^2+T", F), parse_tpoly("T^2+1", F), terms)
    return expand_series(alpha, n)


@_example("f2-cubic-prefix")
def _ex_f2_cubic():
    e = _f2_cubic()
    want = ["T^2+1", "T^3", "T", "T^5", "T", "T", "T"]
    return _strs(e.quotients[:7]) == want, str(_strs(e.quotients[:7]))


@_example("f2-cubic-growth-trend")
def _ex_f2_growth():
    # record values (2^n+1)/(2^(n+1)-2) decrease toward 1/2
    e = _f2_cubic()
    peaks = [v for _, v in growth_peaks(e)][2:]
    ok = len(peaks) >= 3 and all(a > b > Fraction(1, 2) for a, b in zip(peaks, peaks[1:]))
    return ok, ", ".join(map(str, peaks))


@_example("f4-quintic-prefix")
def _ex_f4_quintic():
    F = GF(2, 2, (1, 1, 1))
    alpha = newton_root(parse_xpoly("T^3*X^5+(u*T^4+T^2+1)*X^4+1", F), parse_tpoly("u*T", F), 400)
    e = expand_series(alpha, 21)
    uT, T = "(u)*T", "T"
    want = [uT] + [T] * 3 + [uT] + [T] * 15 + [uT]
    return _strs(e.quotients) == want, f"{e.certified} quotients"


@_example("witness-frobenius")
def _ex_witness_frob():
    F = GF(3)
    alpha = newton_root(parse_xpoly("X^4-T*X^3-1", F), TPoly.T(F), 100)
    T, one, zero = TPoly.T(F), TPoly.one(F), TPoly.zero(F)
    return bool(is_hyperquadratic_witness(alpha, 3, T, one, one, zero)), ""


@_example("witness-golden")
def _ex_witness_golden():
    F = GF(5)
    w = newton_root(parse_xpoly("X^2-T*X-1", F), TPoly.T(F), 100)
    T, one, zero = TPoly.T(F), TPoly.one(F), TPoly.zero(F)
    return bool(is_hyperquadratic_witness(w, 1, T, one, one, zero)), ""


@_example("f11-tail-step")
def _ex_f11_tail():
    F = GF(11)
    t0 = QuadTriple.make(*(parse_tpoly(x, F) for x in ("6*T^2+1", "5*T^3+9*T", "9*T^2+10")))
    t = t0
    for c in (1, 2, 3):
        t = quad_tail_step(t, TPoly.T(F) * c)
    return t == t0, str(t)


@_example("f11-period")
def _ex_f11_period():
    F = GF(11)
    t = QuadTriple.make(*(parse_tpoly(x, F) for x in ("6*T^2+1", "5*T^3+9*T", "9*T^2+10")))
    res = quad_expand(t, TPoly.T(F))
    return not res.preperiod and _strs(res.period) == ["T", "2*T", "3*T"], str(_strs(res.period))


@_example("golden-period")
def _ex_golden_period():
    F = GF(7)
    t = QuadTriple.make(TPoly.one(F), -TPoly.T(F), -TPoly.one(F))
    res = quad_expand(t, TPoly.T(F))
    return not res.preperiod and _strs(res.period) == ["T"], str(_strs(res.period))


@_example("f11-equation")
def _ex_f11_equation():
    F = GF(11)
    T = TPoly.T(F)
    eq = periodic_to_equation([], [T, T * 2, T * 3])
    want = QuadTriple.make(*(parse_tpoly(x, F) for x in ("6*T^2+1", "5*T^3+9*T", "9*T^2+10")))
    return eq.is_proportional(want), str(eq)


@_example("v1")
def _ex_v1():
    return all(int(v_sequence(p, k)[0]) == (2 * k - 1) % p for p in (5, 7, 13) for k in range(1, (p + 1) // 2)), ""


@_example("K10")
def _ex_k10():
    return K_continuant(13, 4, 1, 0).is_one(), ""


@_example("A0")
def _ex_a0():
    return str(A_sequence(13, 4, 0)[0]) == "T", ""


@_example("rqe-H-shape")
def _ex_rqe_shape():
    H = rqe_H(13)
    return H.support() == [0, 1, 13, 14], str(H.support())


@_example("rqe-divides-7")
def _ex_div7():
    r = rqe_divides(7)
    return r.divides and r.remultiplied, ""


@_example("rqe-divides-13")
def _ex_div13():
    r = rqe_divides(13)
    return r.divides and r.remultiplied, ""


@_example("rqe-divides-199")
def _ex_div199():
    r = rqe_divides(199)
    return r.divides and r.remultiplied, f"{r.seconds:.2f} s"


@_example("scan-13")
def _ex_scan13():
    rep = scan_primes(13)
    return rep.primes == [7, 13] and rep.all_divide, ""


@_example("multiple-p5")
def _ex_multiple_p5():
    F = GF(5)
    C = RationalFunc.from_poly(parse_tpoly("T+1", F))
    A = C * C * from_rational_literal(-1, 12, F)
    res = theorem1_solve(A, RationalFunc.from_poly(TPoly.T(F)), C, F)
    H = res.H
    return res.r == 25 and res.verified and H.support() == [0, 1, 25, 26], f"r = {res.r}"


@_example("multiple-shape-p7")
def _ex_multiple_p7():
    F = GF(7)
    C = RationalFunc.from_poly(parse_tpoly("2*T", F))
    A = C * C * from_rational_literal(-1, 12, F)
    res = theorem1_solve(A, RationalFunc.from_poly(parse_tpoly("T^2+3", F)), C, F)
    return res.r == 7 and res.verified and res.H.support() == [0, 1, 7, 8], f"r = {res.r}"


@_example("rqe-pattern-13")
def _ex_pattern13():
    e, alpha = rqe_expansion(13, 200)
    rep = certify_pattern(13, e, alpha)
    degs = set(e.degrees[:200])
    return rep.ok and degs <= {1, 5, 57}, f"degrees {sorted(degs)}"


@_example("rqe-lambda1")
def _ex_lambda1():
    return all(rqe_params(p).lambdas[0] == from_rational_literal(32, 9, GF(p)) for p in (7, 13, 19, 31)), ""


@_example("rqe-growth-13")
def _ex_growth13():
    e, _ = rqe_expansion(13, 200)
    g = perfect_growth_check(13, 4, 6, e)
    return g.ok, f"window sup {g.window_sup}, expected {g.expected}"


@_example("mills-robbins")
def _ex_mills_robbins():
    rep = mills_robbins_check(200)
    return rep.ok, f"residual zero {rep.residual_zero}, beta over F_13 {rep.beta_in_prime_field}"


def run_examples(ids=None, progress=None) -> list[dict]:
    out = []
    for name in ids or EXAMPLES:
        t0 = time.perf_counter()
        try:
            ok, detail = EXAMPLES[name]()
        except (ArithmeticError, ValueError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        if progress:
            progress(f"{name}: {'pass' if ok else 'FAIL'} ({time.perf_counter() - t0:.2f} s)")
        out.append({"id": name, "pass": bool(ok), "detail": detail})
    return out


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _prime(text: str) -> int:
    from .ffield import is_prime

    v = _positive(text)
    if not is_prime(v):
        raise argparse.ArgumentTypeError(f"{v} is not prime")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit one JSON document on stdout")

    fieldp = argparse.ArgumentParser(add_help=False)
    fieldp.add_argument("--p", type=_prime, required=True, help="characteristic")
    fieldp.add_argument("--ext-modulus", help="monic modulus in u for F_{p^n}, e.g. 'u^2+u+1'")

    ap = argparse.ArgumentParser(prog="hypercf", description="Continued fractions in F_q((1/T)).")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("expand-rational", parents=[common, fieldp], help="expand num/den")
    s.add_argument("--num", required=True)
    s.add_argument("--den", default="1")
    s.set_defaults(func=cmd_expand_rational)

    s = sub.add_parser("expand-root", parents=[common, fieldp], help="expand a Newton root of a polynomial in X")
    s.add_argument("--poly-x", required=True)
    s.add_argument("--seed-poly", required=True)
    s.add_argument("--terms", type=_positive, default=400, help="certified series coefficients")
    s.add_argument("--max-quotients", type=_positive, default=10**6)
    s.set_defaults(func=cmd_expand_root)

    s = sub.add_parser("quad-expand", parents=[common, fieldp], help="period of a root of A X^2 + B X + C")
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)
    s.add_argument("--C", required=True)
    s.add_argument("--seed-poly", required=True)
    s.add_argument("--bound", type=_positive)
    s.set_defaults(func=cmd_quad_expand)

    s = sub.add_parser("examples", parents=[common], help="run the golden examples")
    s.add_argument("--only", metavar="ID")
    s.set_defaults(func=cmd_examples)

    s = sub.add_parser("rqe-verify", parents=[common], help="check that P divides H for one prime")
    s.add_argument("--p", type=_prime, required=True)
    s.set_defaults(func=cmd_rqe_verify)

    s = sub.add_parser("rqe-pattern", parents=[common], help="certify the quotient pattern of the quartic root")
    s.add_argument("--p", type=_prime, required=True)
    s.add_argument("--quotients", type=_positive, default=100)
    s.set_defaults(func=cmd_rqe_pattern)

    s = sub.add_parser("scan", parents=[common], help="check divisibility for all primes 1 mod 3 up to --pmax")
    s.add_argument("--pmax", type=_positive, default=199)
    s.add_argument("--workers", type=_positive, default=1)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("theorem1", parents=[common, fieldp], help="solve for H with P | H")
    s.add_argument("--A", required=True)
    s.add_argument("--B", required=True)
    s.add_argument("--C", required=True)
    s.set_defaults(func=cmd_theorem1)

    s = sub.add_parser("mills-robbins", parents=[common], help="test the p = 13 quartic transformation")
    s.add_argument("--precision", type=_positive, default=200)
    s.add_argument("--v-squared", type=int, default=5)
    s.set_defaults(func=cmd_mills_robbins)
    return ap


def _validate(args):
    if args.command in ("rqe-verify", "rqe-pattern"):
        if args.p <= 3 or args.p % 3 != 1:
            raise UsageError("--p must be a prime > 3 with p = 1 mod 3")


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        _validate(args)
        return args.func(args)
    except ParseError as exc:
        _log(f"hypercf: parse error: {exc}")
        return EXIT_USAGE
    except (UsageError, FieldError, HyperError) as exc:
        _log(f"hypercf: {exc}")
        return EXIT_USAGE
    except (NewtonError, PrecisionError, CFError) as exc:
        _log(f"hypercf: computation failed: {exc}")
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
