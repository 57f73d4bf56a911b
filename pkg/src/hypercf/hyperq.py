"""Hyperquadratic power series: the E(p, k, l) family and the quartic pipeline.

The quartic is P(X) = (9/32) X^4 - T X^3 + X^2 - 8/27 over F_p(T), p > 3.  For
p = 1 mod 3 and j = (p - 1)/6 it is expected to divide

    H(X) = K_{j+2,4j} X^{p+1} - eps K_{j+1,4j} X^p + eps' (K_{1,j} X + eps K_{1,j-1}),

where the K are continuants built from the v-sequence below.
"""
from __future__ import annotations

import functools
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .contfrac import (
    CFError,
    Expansion,
    continuant,
    eval_cf_const,
    expand_series,
    growth_stat,
    mobius_matrix,
)
from .ffield import GF, Field, FieldElement, FieldError, binomial_mod, field_sqrt, from_rational_literal, is_prime
from .laurent import (
    LaurentSeries,
    PrecisionError,
    eval_xpoly,
    newton_root,
    series_frobenius,
    series_inv,
    series_mul,
    series_polypart,
)
from .polyring import RationalFunc, TPoly, XPoly, tpoly_gcd, xpoly_divmod, xpoly_modpow_X


class HyperError(ValueError):
    pass


# ---------------------------------------------------------------------------
# hyperquadratic witnesses
# ---------------------------------------------------------------------------

@dataclass
class WitnessCheck:
    holds: bool
    floor: int | None  # exponent floor down to which the residual was certified
    residual: LaurentSeries

    def __bool__(self):
        return self.holds


def is_hyperquadratic_witness(alpha: LaurentSeries, r: int, A: TPoly, B: TPoly, C: TPoly, D: TPoly) -> WitnessCheck:
    """Finite-precision check of alpha = (A alpha^r + B) / (C alpha^r + D).

    A true result only says the relation holds on every certified coefficient.
    """
    if all(x.is_zero() for x in (A, B, C, D)):
        raise HyperError("witness (A, B, C, D) is all zero")
    ar = series_frobenius(alpha, r)
    S = LaurentSeries.from_tpoly
    resid = alpha * (ar * S(C) + S(D)) - (ar * S(A) + S(B))
    if resid.exact:
        return WitnessCheck(resid.is_zero(), None, resid)
    # highest exponent any term of the residual can reach
    tops = [alpha.hi + _deg(C) + ar.hi, alpha.hi + _deg(D), ar.hi + _deg(A), _deg(B)]
    if resid.lo > max(tops):
        raise PrecisionError("precision too low to certify any coefficient of the residual")
    return WitnessCheck(resid.is_zero(), resid.lo, resid)


def _deg(a: TPoly) -> int:
    return -(10**9) if a.is_zero() else a.degree


# ---------------------------------------------------------------------------
# v-sequence, continuants K_{m,n}, A_m
# ---------------------------------------------------------------------------

def _check_pk(p: int, k: int):
    if not is_prime(p) or p == 2:
        raise HyperError(f"p = {p} must be an odd prime")
    if not (1 <= k and 2 * k < p):
        raise HyperError(f"k = {k} must satisfy 1 <= k < p/2")


@functools.lru_cache(maxsize=None)
def v_sequence(p: int, k: int) -> tuple[FieldElement, ...]:
    """(v_1, ..., v_2k) with v_1 = 2k - 1 and v_{i+1} v_i = (2k-2i-1)(2k-2i+1) / (i(2k-i))."""
    _check_pk(p, k)
    F = GF(p)
    v = [F(2 * k - 1)]
    for i in range(1, 2 * k):
        ratio = F((2 * k - 2 * i - 1) * (2 * k - 2 * i + 1)) / F(i * (2 * k - i))
        v.append(ratio / v[-1])
    if any(not x for x in v):
        raise HyperError("v-sequence has a zero entry")  # pragma: no cover - excluded by k < p/2
    return tuple(v)


def K_continuant(p: int, k: int, m: int, n: int) -> TPoly:
    """K_{m,n} = <v_m T, ..., v_n T>, with K_{1,0} = 1."""
    if n == m - 1:
        if not 1 <= m <= 2 * k + 1:
            raise HyperError(f"index ({m}, {n}) out of range")
        return TPoly.one(GF(p))
    if not 1 <= m <= n <= 2 * k:
        raise HyperError(f"index ({m}, {n}) out of range for k = {k}")
    return _K(p, k, m, n)


@functools.lru_cache(maxsize=4096)
def _K(p: int, k: int, m: int, n: int) -> TPoly:
    F = GF(p)
    T = TPoly.T(F)
    v = v_sequence(p, k)
    return continuant([T * vi for vi in v[m - 1: n]], TPoly.one(F))


def A_sequence(p: int, k: int, m_max: int) -> list[TPoly]:
    """A_0 = T and A_{m+1} = polynomial part of A_m^p / (T^2 - 1)^k."""
    _check_pk(p, k)
    F = GF(p)
    T = TPoly.T(F)
    div = (T * T - 1) ** k
    out = [T]
    for _ in range(m_max):
        a = out[-1]
        # A^p = A(T^p) over F_p
        dil = np.zeros(a.degree * p + 1, dtype=np.int64)
        dil[::p] = a.coeffs
        nxt = TPoly(F, dil, _trusted=True) // div
        assert nxt.degree == p * a.degree - 2 * k
        out.append(nxt)
    return out


def padic_valuation(m: int, n: int) -> int:
    """max{k : m^k | n}."""
    if m < 2 or n < 1:
        raise ValueError("need m >= 2 and n >= 1")
    k = 0
    while n % m == 0:
        n //= m
        k += 1
    return k


def i_of_n(j: int, n: int) -> int:
    return padic_valuation(4 * j + 1, 4 * n - 1)


# ---------------------------------------------------------------------------
# the E(p, k, l) family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HyperParams:
    p: int
    k: int
    l: int
    lambdas: tuple
    u1: FieldElement
    u2: FieldElement

    def __post_init__(self):
        _check_pk(self.p, self.k)
        if self.l < 1 or len(self.lambdas) != self.l:
            raise HyperError("need l >= 1 lambdas")
        if any(not x for x in (*self.lambdas, self.u1, self.u2)):
            raise HyperError("lambdas, u1 and u2 must be nonzero")

    @property
    def field(self) -> Field:
        return GF(self.p)

    def initial_quotients(self) -> list[TPoly]:
        T = TPoly.T(self.field)
        return [T * lam for lam in self.lambdas]


def condition_star(params: HyperParams) -> bool:
    """[l_1, ..., l_{l-1}, l_l - 2k (u1/u2)(v_2k/v_1)] == k 2^(1-2k) C(2k, k) u2.

    Raises CFError when the constant continued fraction on the left has a zero
    denominator (distinct from the condition being false).
    """
    F = params.field
    k = params.k
    v = v_sequence(params.p, k)
    lam = list(params.lambdas)
    lam[-1] = lam[-1] - F(2 * k) * (params.u1 / params.u2) * (v[2 * k - 1] / v[0])
    lhs = eval_cf_const(lam)
    rhs = F(k) * F(2) ** (1 - 2 * k) * binomial_mod(2 * k, k, F) * params.u2
    return lhs == rhs


def build_E_equation(params: HyperParams) -> XPoly:
    """Degree p+1 equation of the E(p,k,l) element defined by ``params``.

    Eliminates alpha_{l+1} between alpha = [l_1 T, ..., l_l T, alpha_{l+1}] and
    alpha^p = u1 K_{1,2k} alpha_{l+1} + u2 K_{1,2k-1}.
    """
    F = params.field
    p, k = params.p, params.k
    P, PP, Q, QQ = mobius_matrix(params.initial_quotients())
    K1 = K_continuant(p, k, 1, 2 * k)
    K2 = K_continuant(p, k, 1, 2 * k - 1)
    # alpha_{l+1} = (QQ alpha - PP) / (P - Q alpha)
    # alpha^p (P - Q alpha) = u1 K1 (QQ alpha - PP) + u2 K2 (P - Q alpha)
    u1, u2 = params.u1, params.u2
    coeffs = [RationalFunc.zero(F)] * (p + 2)
    coeffs[p + 1] = RationalFunc.from_poly(-Q)
    coeffs[p] = RationalFunc.from_poly(P)
    coeffs[1] = RationalFunc.from_poly(-(K1 * QQ * u1 - K2 * Q * u2))
    coeffs[0] = RationalFunc.from_poly(K1 * PP * u1 - K2 * P * u2)
    return XPoly(F, coeffs)


def strip_quotients(alpha: LaurentSeries, count: int) -> tuple[list[TPoly], LaurentSeries]:
    """First ``count`` partial quotients of alpha and the tail alpha_{count+1}."""
    out = []
    x = alpha
    for _ in range(count):
        a, rest = series_polypart(x)
        if rest.is_zero():
            raise PrecisionError("ran out of precision while stripping quotients")
        out.append(a)
        x = series_inv(rest)
    return out, x


def frobenius_relation_residual(params: HyperParams, alpha: LaurentSeries) -> LaurentSeries:
    """alpha^p - u1 K_{1,2k} alpha_{l+1} - u2 K_{1,2k-1}, with the tail taken from alpha."""
    p, k = params.p, params.k
    _, tail = strip_quotients(alpha, params.l)
    S = LaurentSeries.from_tpoly
    K1 = K_continuant(p, k, 1, 2 * k)
    K2 = K_continuant(p, k, 1, 2 * k - 1)
    return series_frobenius(alpha, p) - S(K1) * tail * params.u1 - S(K2 * params.u2)


# ---------------------------------------------------------------------------
# the quartic
# ---------------------------------------------------------------------------

def _check_rqe_prime(p: int, need_one_mod_3: bool = True):
    if not is_prime(p) or p <= 3:
        raise HyperError(f"p = {p} must be a prime > 3")
    if need_one_mod_3 and p % 3 != 1:
        raise HyperError(f"p = {p} must be 1 mod 3")


def rqe_P(p: int, field: Field | None = None) -> XPoly:
    """(9/32) X^4 - T X^3 + X^2 - 8/27 over F(T); F defaults to F_p."""
    _check_rqe_prime(p, need_one_mod_3=False)
    F = field or GF(p)
    if F.p != p:
        raise HyperError("field characteristic does not match p")
    T = TPoly.T(F)
    c = lambda a, b: TPoly.constant(F, from_rational_literal(a, b, F))  # noqa: E731
    return XPoly(F, [c(-8, 27), 0, 1, -T, c(9, 32)])


def quartic_hypothesis_holds(A: RationalFunc, C: RationalFunc) -> bool:
    """12 A + C^2 == 0."""
    return (A * 12 + C * C).is_zero()


def rqe_hypothesis_observation(p: int) -> dict:
    """Whether the quartic's (A, C) = (9/32, 1) meets 12A + C^2 = 0 in F_p."""
    P = rqe_P(p)
    value = P.coeff(4) * 12 + P.coeff(2) * P.coeff(2)
    return {"p": p, "12A+C^2": str(value), "holds": value.is_zero()}


def rqe_epsilons(p: int) -> tuple[FieldElement, FieldElement]:
    _check_rqe_prime(p)
    F = GF(p)
    j = (p - 1) // 6
    v = v_sequence(p, 2 * j)
    vj1 = v[j]  # v_{j+1}
    eps = F(32) / (F(9) * vj1)
    bracket = list(v[j: 4 * j - 1]) + [F(3) * v[4 * j - 1] / F(5)]  # v_{j+1} .. v_{4j-1}, 3 v_{4j}/5
    br = eval_cf_const(bracket)
    eps_p = F(-16) ** (j + 1) / (F(3) * vj1 * binomial_mod(4 * j, 2 * j, F)) * br
    if not eps or not eps_p:
        raise HyperError("epsilon constants vanish")  # pragma: no cover
    return eps, eps_p


def rqe_params(p: int) -> HyperParams:
    """The (3j+2)-tuple of the E(p, 2j, 3j) element attached to the quartic."""
    _check_rqe_prime(p)
    j = (p - 1) // 6
    eps, eps_p = rqe_epsilons(p)
    v = v_sequence(p, 2 * j)
    u2 = eps_p * (-1) ** j
    u1 = u2 * eps ** ((-1) ** (j + 1))
    lambdas = tuple(v[j + i - 1] * eps ** ((-1) ** (i + 1)) for i in range(1, 3 * j + 1))
    return HyperParams(p, 2 * j, 3 * j, lambdas, u1, u2)


def rqe_H(p: int) -> XPoly:
    _check_rqe_prime(p)
    F = GF(p)
    j = (p - 1) // 6
    k = 2 * j
    eps, eps_p = rqe_epsilons(p)
    K = functools.partial(K_continuant, p, k)
    coeffs = [RationalFunc.zero(F)] * (p + 2)
    coeffs[p + 1] = RationalFunc.from_poly(K(j + 2, 4 * j))
    coeffs[p] = RationalFunc.from_poly(-K(j + 1, 4 * j) * eps)
    coeffs[1] = RationalFunc.from_poly(K(1, j) * eps_p)
    coeffs[0] = RationalFunc.from_poly(K(1, j - 1) * (eps_p * eps))
    return XPoly(F, coeffs)


@dataclass
class RqeData:
    p: int
    j: int
    epsilon: FieldElement
    epsilon_prime: FieldElement
    v: tuple
    H: XPoly
    P: XPoly

    @classmethod
    def build(cls, p: int) -> "RqeData":
        eps, eps_p = rqe_epsilons(p)
        j = (p - 1) // 6
        return cls(p, j, eps, eps_p, v_sequence(p, 2 * j), rqe_H(p), rqe_P(p))


@dataclass
class DivisibilityResult:
    p: int
    divides: bool
    remultiplied: bool
    quotient: XPoly
    remainder: XPoly
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "divides": self.divides,
            "remultiply_check": self.remultiplied,
            "quotient_degree": self.quotient.degree,
        }
        if not self.divides:
            out["remainder"] = str(self.remainder)
        return out


def rqe_divides(p: int) -> DivisibilityResult:
    t0 = time.perf_counter()
    H = rqe_H(p)
    P = rqe_P(p)
    q, r = xpoly_divmod(H, P)
    divides = r.is_zero()
    remult = divides and (q * P == H)
    return DivisibilityResult(p, divides, remult, q, r, time.perf_counter() - t0)


@dataclass
class ScanReport:
    p_max: int
    results: list = dc_field(default_factory=list)

    @property
    def all_divide(self) -> bool:
        return all(r.divides and r.remultiplied for r in self.results)

    @property
    def primes(self) -> list[int]:
        return [r.p for r in self.results]

    def to_json(self) -> dict:
        return {
            "p_max": self.p_max,
            "checked": len(self.results),
            "all_divide": self.all_divide,
            "results": [r.to_json() for r in self.results],
        }


def rqe_primes(p_max: int) -> list[int]:
    return [p for p in range(7, p_max + 1) if p % 3 == 1 and is_prime(p)]


def scan_primes(p_max: int, workers: int = 1) -> ScanReport:
    primes = rqe_primes(p_max)
    if workers > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(rqe_divides, primes))
    else:
        results = [rqe_divides(p) for p in primes]
    results.sort(key=lambda r: r.p)
    return ScanReport(p_max, results)


# ---------------------------------------------------------------------------
# constructive form of the existence theorem
# ---------------------------------------------------------------------------

@dataclass
class MultipleResult:
    r: int
    H: XPoly | None
    kernel_dim: int
    verified: bool

    @property
    def found(self) -> bool:
        return self.H is not None


def _rf_kernel(rows: list[list[RationalFunc]], F: Field) -> list[list[RationalFunc]]:
    """Basis of the right kernel of a matrix over F_q(T) by Gauss-Jordan elimination."""
    m = [row[:] for row in rows]
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if not m[i][c].is_zero()), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and not m[i][c].is_zero():
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [RationalFunc.zero(F)] * ncols
        vec[fcol] = RationalFunc.one(F)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][fcol]
        basis.append(vec)
    return basis


def xpoly_gcd(a: XPoly, b: XPoly) -> XPoly:
    while not b.is_zero():
        a, b = b, xpoly_divmod(a, b)[1]
    return a.monic()


def theorem1_solve(A: RationalFunc, B: RationalFunc, C: RationalFunc, field: Field) -> MultipleResult:
    """Find H = U X^{r+1} + V X^r + W X + Z divisible by P = A X^4 + B X^3 + C X^2 + 1."""
    p = field.p
    if p <= 3:
        raise HyperError("characteristic must exceed 3")
    A, B, C = (x if isinstance(x, RationalFunc) else RationalFunc.from_poly(x) for x in (A, B, C))
    if not quartic_hypothesis_holds(A, C):
        raise HyperError("hypothesis 12A + C^2 = 0 fails")
    if A.is_zero():
        raise HyperError("A = 0: P is not quartic")
    P = XPoly(field, [1, 0, C, B, A])
    if xpoly_gcd(P, P.derivative()).degree != 0:
        raise HyperError("P is not squarefree in X")
    r = p if p % 3 == 1 else p * p
    R1 = xpoly_modpow_X(P, r)
    R2 = (R1 * XPoly.X(field)) % P
    cols = [R2, R1, XPoly.X(field), XPoly(field, [1])]
    rows = [[col.coeff(i) for col in cols] for i in range(4)]
    kernel = _rf_kernel(rows, field)
    if not kernel:
        return MultipleResult(r, None, 0, False)
    U, V, W, Z = kernel[0]
    coeffs = [RationalFunc.zero(field)] * (r + 2)
    coeffs[r + 1], coeffs[r], coeffs[1], coeffs[0] = U, V, W, Z
    H = XPoly(field, coeffs).clear_denominators()
    _, rem = xpoly_divmod(H, P)
    return MultipleResult(r, H, len(kernel), rem.is_zero())


# ---------------------------------------------------------------------------
# root, pattern and growth certification
# ---------------------------------------------------------------------------

def rqe_root(p: int, terms: int, field: Field | None = None) -> LaurentSeries:
    """Root of the quartic in F((1/T)) with ``terms`` certified coefficients."""
    F = field or GF(p)
    seed = TPoly.T(F) * from_rational_literal(32, 9, F)
    return newton_root(rqe_P(p, F), seed, terms)


def rqe_expansion(p: int, n_quotients: int, terms: int | None = None) -> tuple[Expansion, LaurentSeries]:
    """At least ``n_quotients`` certified partial quotients of the quartic root."""
    terms = terms or 8 * n_quotients
    while True:
        alpha = rqe_root(p, terms)
        e = expand_series(alpha, n_quotients)
        if e.certified >= n_quotients:
            e.meta.update(algebraic_degree=4, degree_bound=p + 1)
            return e, alpha
        terms *= 2


@dataclass
class PatternReport:
    p: int
    j: int
    checked: int
    ok: bool
    shape_ok: bool = True
    degree_ok: bool = True
    initial_lambdas_ok: bool = True
    lambda1_is_32_over_9: bool = True
    condition_star: bool | None = None
    frobenius_relation: bool | None = None
    lambdas: list = dc_field(default_factory=list)
    indices: list = dc_field(default_factory=list)
    failures: list = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "j": self.j,
            "checked": self.checked,
            "ok": self.ok,
            "shape_ok": self.shape_ok,
            "degree_ok": self.degree_ok,
            "initial_lambdas_ok": self.initial_lambdas_ok,
            "lambda1_is_32_over_9": self.lambda1_is_32_over_9,
            "condition_star": self.condition_star,
            "frobenius_relation": self.frobenius_relation,
            "lambdas": [int(x) for x in self.lambdas],
            "i_of_n": self.indices,
            "failures": self.failures[:20],
        }


def certify_pattern(p: int, expansion: Expansion, alpha: LaurentSeries | None = None) -> PatternReport:
    """Check a_n = lambda_n A_{i(n)} and deg a_n = (p^{i(n)} + 2)/3 on a certified prefix.

    ``expansion.quotients[n-1]`` is a_n.  With ``alpha`` supplied, the Frobenius
    relation of the constructed parameters is also checked on the series.
    """
    _check_rqe_prime(p)
    F = GF(p)
    j = (p - 1) // 6
    k = 2 * j
    count = expansion.certified
    idx = [i_of_n(j, n) for n in range(1, count + 1)]
    A = A_sequence(p, k, max(idx) if idx else 0)
    rep = PatternReport(p, j, count, True)
    rep.indices = idx
    for n in range(1, count + 1):
        a = expansion.quotients[n - 1]
        i = idx[n - 1]
        Ai = A[i]
        lam = a.lead / Ai.lead if not a.is_zero() else F.zero
        rep.lambdas.append(lam)
        if a.is_zero() or a != Ai * lam:
            rep.shape_ok = False
            rep.failures.append({"n": n, "check": "shape", "i": i, "expected": f"c*({Ai})", "actual": str(a)})
        want = (p**i + 2) // 3
        if (p**i + 2) % 3 or a.degree != want:
            rep.degree_ok = False
            rep.failures.append({"n": n, "check": "degree", "expected": want, "actual": a.degree})
    params = rqe_params(p)
    for i in range(1, min(3 * j, count) + 1):
        if rep.lambdas[i - 1] != params.lambdas[i - 1]:
            rep.initial_lambdas_ok = False
            rep.failures.append({"n": i, "check": "initial lambda",
                                 "expected": str(params.lambdas[i - 1]), "actual": str(rep.lambdas[i - 1])})
    if count:
        rep.lambda1_is_32_over_9 = rep.lambdas[0] == from_rational_literal(32, 9, F)
    try:
        rep.condition_star = condition_star(params)
    except CFError:
        rep.condition_star = None
    if alpha is not None:
        resid = frobenius_relation_residual(params, alpha)
        rep.frobenius_relation = resid.is_zero()
    rep.ok = (
        rep.shape_ok
        and rep.degree_ok
        and rep.initial_lambdas_ok
        and rep.lambda1_is_32_over_9
        and rep.condition_star is True
        and rep.frobenius_relation is not False
    )
    return rep


@dataclass
class GrowthCheck:
    expected: Fraction
    window_sup: Fraction | None
    attained_at: list
    peaks: list  # (index, value) at quotients of record degree
    ok: bool

    def to_json(self) -> dict:
        return {
            "expected": str(self.expected),
            "window_sup": None if self.window_sup is None else str(self.window_sup),
            "attained_at": self.attained_at,
            "peaks": [[n, str(v)] for n, v in self.peaks],
            "ok": self.ok,
            "note": "finite-prefix estimate; not a limsup",
        }


def growth_peaks(e: Expansion) -> list:
    """(n, value) of the growth statistic where a_{n+1} has a record degree."""
    gs = growth_stat(e)
    degs = e.degrees[: e.certified]
    out, best = [], 0
    for n, v in enumerate(gs.values):
        if degs[n + 1] > best:
            best = degs[n + 1]
            if v is not None:
                out.append((n, v))
    return out


def perfect_growth_check(p: int, k: int, l: int, expansion: Expansion, window: int | None = None) -> GrowthCheck:
    """Window sup of the growth statistic against (p - 2k - 1)/l, as exact rationals."""
    expected = Fraction(p - 2 * k - 1, l)
    gs = growth_stat(expansion, window)
    hits = [n for n, v in enumerate(gs.values) if v == expected]
    ok = gs.window_sup == expected
    return GrowthCheck(expected, gs.window_sup, hits, growth_peaks(expansion), ok)


# ---------------------------------------------------------------------------
# the p = 13 transformation
# ---------------------------------------------------------------------------

@dataclass
class MillsRobbinsReport:
    precision: int
    v: FieldElement
    v_squared: int
    residual_zero: bool
    beta_in_prime_field: bool
    residual_leading_exponent: int | None
    beta: LaurentSeries

    @property
    def ok(self) -> bool:
        return self.residual_zero and self.beta_in_prime_field

    def to_json(self) -> dict:
        return {
            "precision": self.precision,
            "v": str(self.v),
            "v_squared": self.v_squared,
            "residual_zero": self.residual_zero,
            "beta_in_prime_field": self.beta_in_prime_field,
            "residual_leading_exponent": self.residual_leading_exponent,
            "ok": self.ok,
        }


def mills_robbins_check(precision: int = 200, v_squared: int = 5) -> MillsRobbinsReport:
    """Form beta from the quartic root at p = 13 by 1/beta(T) = v alpha(vT), v^2 = v_squared,
    and test whether beta solves X^4 + X^2 - T X + 1 = 0 on every certified coefficient."""
    if precision < 50:
        raise HyperError("precision must be at least 50 coefficients")
    F = GF(13, 2)
    v = field_sqrt(F(v_squared))
    if v is None:
        raise HyperError(f"{v_squared} has no square root in {F!r}")  # pragma: no cover
    alpha = rqe_root(13, precision, F)
    beta = series_inv(alpha.scale_T(v) * v)
    T = TPoly.T(F)
    Q = XPoly(F, [1, -T, 1, 0, 1])
    resid = eval_xpoly(Q, beta, beta.lo)
    in_prime = bool(np.all(beta.coeffs < 13))
    lead = None if resid.is_zero() else resid.hi
    return MillsRobbinsReport(precision, v, v_squared, resid.is_zero(), in_prime, lead, beta)
