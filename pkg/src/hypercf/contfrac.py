"""Continued fractions in F_q((1/T)): continuants, expansions, quadratic periods."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .ffield import Field, FieldElement
from .laurent import (
    LaurentSeries,
    NewtonError,
    PrecisionError,
    newton_root,
    series_inv,
    series_polypart,
)
from .polyring import RationalFunc, TPoly, XPoly, tpoly_divmod, tpoly_gcd


class CFError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# continuants
# ---------------------------------------------------------------------------

def continuant(xs: Sequence, one=None):
    """<x_1, ..., x_n> with <> = 1 and <x_1> = x_1.

    Works for any ring elements (TPoly, FieldElement, int, Fraction).  ``one``
    is required only when ``xs`` is empty and a typed unit is wanted.
    """
    if not xs:
        return 1 if one is None else one
    unit = one if one is not None else _unit_like(xs[0])
    nxt, cur = unit, xs[-1]  # <x_{i+1}..x_n>, <x_i..x_n> walking leftwards
    for x in reversed(xs[:-1]):
        nxt, cur = cur, x * cur + nxt
    return cur


def _unit_like(x):
    if isinstance(x, TPoly):
        return TPoly.one(x.field)
    if isinstance(x, FieldElement):
        return x.field.one
    return 1


def eval_cf(quotients: Sequence[TPoly]) -> RationalFunc:
    """[a_1, ..., a_n] = <a_1..a_n> / <a_2..a_n>."""
    if not quotients:
        raise CFError("empty continued fraction")
    F = quotients[0].field
    num = continuant(list(quotients), TPoly.one(F))
    den = continuant(list(quotients[1:]), TPoly.one(F))
    if den.is_zero():
        raise CFError("continued fraction has a zero denominator")
    return RationalFunc(num, den)


def eval_cf_const(xs: Sequence[FieldElement]) -> FieldElement:
    """The bracket [x_1, ..., x_m] over constants, via the continuant quotient."""
    if not xs:
        raise CFError("empty continued fraction")
    one = xs[0].field.one
    num = continuant(list(xs), one)
    den = continuant(list(xs[1:]), one)
    if not den:
        raise CFError("zero denominator in a constant continued fraction")
    return num / den


def mobius_matrix(quotients: Sequence[TPoly]) -> tuple[TPoly, TPoly, TPoly, TPoly]:
    """(p, p', q, q') with [a_1..a_n, x] = (p x + p') / (q x + q')."""
    F = quotients[0].field
    one = TPoly.one(F)
    qs = list(quotients)
    p = continuant(qs, one)
    pp = continuant(qs[:-1], one)
    q = continuant(qs[1:], one)
    qq = continuant(qs[1:-1], one) if len(qs) >= 2 else TPoly.zero(F)
    return p, pp, q, qq


# ---------------------------------------------------------------------------
# expansions
# ---------------------------------------------------------------------------

@dataclass
class Expansion:
    field: Field
    quotients: list[TPoly]
    certified: int
    stopped: str = "budget"  # "budget" | "precision" | "finite"
    meta: dict = dc_field(default_factory=dict)

    @property
    def degrees(self) -> list[int]:
        return [0 if a.degree is None else a.degree for a in self.quotients]

    def __len__(self):
        return len(self.quotients)

    def __getitem__(self, i):
        return self.quotients[i]

    def to_json(self) -> dict:
        return {
            "p": self.field.p,
            "n": self.field.n,
            "quotients": [str(a) for a in self.quotients],
            "certified": self.certified,
            "degrees": self.degrees,
            "stopped": self.stopped,
        }


def expand_rational(f: RationalFunc) -> Expansion:
    """Euclidean algorithm on num/den; the expansion is finite."""
    F = f.field
    a, b = f.num, f.den
    out = []
    while True:
        q, r = tpoly_divmod(a, b)
        out.append(q)
        if r.is_zero():
            break
        a, b = b, r
    return Expansion(F, out, len(out), "finite")


def expand_series(alpha: LaurentSeries, max_terms: int) -> Expansion:
    """Partial quotients of ``alpha`` that its precision floor certifies."""
    F = alpha.field
    out = []
    stopped = "budget"
    x = alpha
    while len(out) < max_terms:
        try:
            a, rest = series_polypart(x)
        except PrecisionError:
            stopped = "precision"
            break
        if rest.is_exact_zero():
            out.append(a)
            stopped = "finite"
            break
        out.append(a)
        if rest.is_zero():
            # a is certified; the next quotient is not
            stopped = "precision"
            break
        x = series_inv(rest)
    return Expansion(F, out, len(out), stopped, {"floor": alpha.floor})


# ---------------------------------------------------------------------------
# quadratic equations and periodic expansions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadTriple:
    """A*x^2 + B*x + C = 0, normalized: content 1 and A monic."""

    A: TPoly
    B: TPoly
    C: TPoly

    @classmethod
    def make(cls, A, B, C) -> "QuadTriple":
        return normalize_triple(A, B, C)

    @property
    def field(self) -> Field:
        return self.A.field

    def discriminant(self) -> TPoly:
        return self.B * self.B - self.A * self.C * 4

    def to_xpoly(self) -> XPoly:
        return XPoly(self.field, [self.C, self.B, self.A])

    def is_proportional(self, other: "QuadTriple") -> bool:
        return normalize_triple(*self) == normalize_triple(*other)

    def __iter__(self):
        return iter((self.A, self.B, self.C))

    def __str__(self):
        return f"({self.A})*X^2+({self.B})*X+({self.C})"


def normalize_triple(A: TPoly, B: TPoly, C: TPoly) -> QuadTriple:
    polys = [a for a in (A, B, C) if not a.is_zero()]
    if not polys:
        raise CFError("zero equation")
    g = polys[0].monic()
    for a in polys[1:]:
        if g.is_one():
            break
        g = tpoly_gcd(g, a)
    if not g.is_one():
        A, B, C = A // g, B // g, C // g
    lead = A if not A.is_zero() else (B if not B.is_zero() else C)
    c = lead.field.inv(int(lead.coeffs[-1]))
    return QuadTriple(A.scale(c), B.scale(c), C.scale(c))


def quad_tail_step(t: QuadTriple, a: TPoly) -> QuadTriple:
    """Equation of x' where x = a + 1/x' and A x^2 + B x + C = 0."""
    A, B, C = t
    A2 = A * a * a + B * a + C
    if A2.is_zero():
        raise CFError("tail equation degenerates: the root is rational")
    B2 = A * a * 2 + B
    return normalize_triple(A2, B2, A)


def tpoly_is_square(D: TPoly) -> bool:
    """Square test in F_q[T] (odd characteristic)."""
    if D.is_zero():
        return True
    F = D.field
    if D.degree % 2:
        return False
    r = F.sqrt(int(D.coeffs[-1]))
    if r is None:
        return False
    if D.degree == 0:
        return True
    half = D.degree // 2
    s = XPoly(F, [-D, 0, 1])
    root = newton_root(s, TPoly.monomial(F, half, r), half + 2)
    S, _ = series_polypart(root)
    return S * S == D


def is_irrational(t: QuadTriple) -> bool:
    if t.A.is_zero():
        return False
    if t.field.p == 2:
        # x^2 + b x + c over F_2^n(T): a rational root r = n/d has d | A and n | C;
        # decided lazily by quad_tail_step (A' = 0) instead
        return True
    return not tpoly_is_square(t.discriminant())


class QuadExpansion(NamedTuple):
    preperiod: list
    period: list


def _reduced(t: QuadTriple, a: TPoly) -> bool:
    # the conjugate of the root with polynomial part a lies in |x| < 1
    # exactly when the polynomial part of -B/A equals a
    q, _ = tpoly_divmod(-t.B, t.A)
    return q == a


def quad_expand(
    t: QuadTriple,
    branch_seed,
    bound: int | None = None,
    shadow_terms: int = 64,
) -> QuadExpansion:
    """Eventually periodic expansion of the root of ``t`` selected by ``branch_seed``."""
    t = normalize_triple(*t)
    F = t.field
    if not is_irrational(t):
        raise CFError("equation has a rational root (square discriminant)")
    if bound is None:
        bound = 10 * ((t.discriminant().degree or 0) + 1) * F.q
    seed0 = branch_seed
    shadow = newton_root(t.to_xpoly(), seed0, shadow_terms)
    quotients: list[TPoly] = []
    seen: dict[QuadTriple, int] = {}
    cur = t
    terms = shadow_terms
    for n in range(bound):
        a = rest = None
        for _attempt in range(6):
            try:
                a, rest = series_polypart(shadow)
                if rest.is_zero():
                    raise PrecisionError("remainder not certified")
                break
            except PrecisionError:
                terms *= 2
                shadow = _refresh(cur, shadow, terms, t, seed0, quotients)
        else:
            raise CFError("could not certify the next partial quotient")
        if _reduced(cur, a):
            if cur in seen:
                m = seen[cur]
                return QuadExpansion(quotients[:m], quotients[m:])
            seen[cur] = n
        quotients.append(a)
        cur = quad_tail_step(cur, a)
        shadow = series_inv(rest)
    raise CFError(f"no period found within {bound} partial quotients")


def _refresh(cur, shadow, terms, t0, seed0, quotients):
    if not shadow.is_zero():
        try:
            return newton_root(cur.to_xpoly(), shadow, terms)
        except NewtonError:
            pass
    # replay from the original equation at higher precision
    x = newton_root(t0.to_xpoly(), seed0, terms + 4 * sum(a.degree for a in quotients))
    for a in quotients:
        _, rest = series_polypart(x)
        x = series_inv(rest)
    return x


def periodic_to_equation(preperiod: Sequence[TPoly], period: Sequence[TPoly]) -> QuadTriple:
    """Normalized quadratic equation of [preperiod, period, period, ...]."""
    if not period:
        raise CFError("period must be nonempty")
    F = period[0].field
    p, pp, q, qq = mobius_matrix(period)
    # alpha = (p alpha + p') / (q alpha + q')
    eq = (q, qq - p, -pp)  # coefficients of alpha^2, alpha, 1
    if preperiod:
        P, PP, Q, QQ = mobius_matrix(preperiod)
        # beta = (P alpha + P')/(Q alpha + Q')  =>  alpha = (Q' beta - P')/(P - Q beta)
        N = (-PP, QQ)  # constant, linear coefficient in beta
        D = (P, -Q)
        a2, a1, a0 = eq
        A = a2 * N[1] * N[1] + a1 * N[1] * D[1] + a0 * D[1] * D[1]
        B = (a2 * N[0] * N[1] * 2 + a1 * (N[0] * D[1] + N[1] * D[0]) + a0 * D[0] * D[1] * 2)
        C = a2 * N[0] * N[0] + a1 * N[0] * D[0] + a0 * D[0] * D[0]
        eq = (A, B, C)
    A, B, C = eq
    if A.is_zero():
        raise CFError("degenerate fixed point")
    t = normalize_triple(A, B, C)
    if F.p != 2 and tpoly_is_square(t.discriminant()):
        raise CFError("fixed point is rational")
    return t


# ---------------------------------------------------------------------------
# growth of partial quotients
# ---------------------------------------------------------------------------

@dataclass
class GrowthStat:
    values: list  # Fraction or None (undefined when the degree sum is 0)
    window: int
    window_sup: Fraction | None
    sup_index: int | None

    def to_json(self) -> dict:
        return {
            "values": [None if v is None else str(v) for v in self.values],
            "window": self.window,
            "window_sup": None if self.window_sup is None else str(self.window_sup),
            "sup_index": self.sup_index,
            "note": "finite-prefix estimate; not a limsup",
        }


def growth_stat(e: Expansion, window: int | None = None) -> GrowthStat:
    """deg(a_{n+1}) / sum_{k<=n} deg(a_k) over the certified prefix."""
    if e.certified < 2:
        raise CFError("growth statistic needs at least two certified quotients")
    degs = e.degrees[: e.certified]
    values = []
    total = 0
    for n in range(len(degs) - 1):
        total += degs[n]
        values.append(Fraction(degs[n + 1], total) if total else None)
    window = len(values) if window is None else min(window, len(values))
    tail = values[len(values) - window:]
    best, best_i = None, None
    for i, v in enumerate(tail):
        if v is not None and (best is None or v > best):
            best, best_i = v, len(values) - window + i
    return GrowthStat(values, window, best, best_i)
