"""Truncated Laurent series in 1/T over F_q with a certified precision floor.

A :class:`LaurentSeries` stores the coefficients of ``T^hi, T^(hi-1), ..., T^lo``.
Every stored coefficient is exact.  When ``exact`` is false nothing is known below
``lo``; when it is true all lower coefficients are zero.  The inexact zero (all
known coefficients vanish) keeps its floor in ``lo`` with an empty vector.

Precision rules (worst case, exponent floors):

* ``a + b``: ``max(lo_a, lo_b)``
* ``a * b``: ``max(lo_a + hi_b, lo_b + hi_a)``
* ``1 / a``: same number of coefficients as ``a``
* ``a ** e`` (Frobenius): ``e * (lo - 1) + 1``
"""
from __future__ import annotations

import numpy as np

from .ffield import Field, FieldElement, FieldError
from .polyring import RationalFunc, TPoly, XPoly

_EMPTY = np.zeros(0, dtype=np.int64)


class PrecisionError(ArithmeticError):
    """Raised when an operation cannot certify its result at the available precision."""


class NewtonError(ArithmeticError):
    pass


class LaurentSeries:
    __slots__ = ("field", "hi", "coeffs", "exact")

    def __init__(self, field: Field, hi: int, coeffs, exact: bool = False):
        arr = np.asarray(coeffs, dtype=np.int64)
        nz = np.flatnonzero(arr)
        lo = hi - arr.size + 1
        if nz.size == 0:
            arr = _EMPTY
            hi = 0 if exact else lo - 1
        else:
            first = int(nz[0])
            hi -= first
            arr = arr[first:]
            if exact:
                arr = arr[: int(nz[-1]) - first + 1]
        arr = np.ascontiguousarray(arr)
        arr.setflags(write=False)
        self.field = field
        self.hi = int(hi)
        self.coeffs = arr
        self.exact = bool(exact)

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> "LaurentSeries":
        return cls(field, 0, _EMPTY, exact=True)

    @classmethod
    def from_tpoly(cls, a: TPoly) -> "LaurentSeries":
        if a.is_zero():
            return cls.zero(a.field)
        return cls(a.field, a.degree, a.coeffs[::-1], exact=True)

    @classmethod
    def monomial(cls, field: Field, e: int, c=1) -> "LaurentSeries":
        v = c.value if isinstance(c, FieldElement) else int(c) % field.p
        return cls(field, e, [v], exact=True)

    @classmethod
    def from_terms(cls, field: Field, terms: dict[int, int], floor: int | None = None) -> "LaurentSeries":
        """Build from {exponent: encoded coefficient}; ``floor=None`` means exact."""
        if not terms and floor is None:
            return cls.zero(field)
        hi = max(terms) if terms else floor - 1
        lo = floor if floor is not None else min(terms)
        arr = np.zeros(max(hi - lo + 1, 0), dtype=np.int64)
        for e, c in terms.items():
            if e >= lo:
                arr[hi - e] = c
        return cls(field, hi, arr, exact=floor is None)

    # -- queries --------------------------------------------------------------
    @property
    def lo(self) -> int:
        return self.hi - self.coeffs.size + 1

    @property
    def floor(self) -> int | None:
        """Certified precision floor, or None for an exact series."""
        return None if self.exact else self.lo

    def is_zero(self) -> bool:
        """True when no nonzero coefficient is known (exact or to precision)."""
        return self.coeffs.size == 0

    def is_exact_zero(self) -> bool:
        return self.exact and self.coeffs.size == 0

    @property
    def valuation(self) -> int:
        """Leading exponent (|a| = |T|^valuation)."""
        if self.is_zero():
            raise PrecisionError("series has no certified nonzero coefficient")
        return self.hi

    @property
    def lead(self) -> FieldElement:
        if self.is_zero():
            raise PrecisionError("series has no certified nonzero coefficient")
        return FieldElement(self.field, int(self.coeffs[0]))

    def coefficient(self, e: int) -> FieldElement:
        if not self.exact and e < self.lo:
            raise PrecisionError(f"coefficient of T^{e} is below the precision floor {self.lo}")
        if e > self.hi or e < self.lo:
            return FieldElement(self.field, 0)
        return FieldElement(self.field, int(self.coeffs[self.hi - e]))

    def terms(self) -> dict[int, int]:
        return {self.hi - i: int(c) for i, c in enumerate(self.coeffs) if c}

    def certified_count(self) -> int | None:
        return None if self.exact else self.coeffs.size

    # -- precision handling ---------------------------------------------------
    def truncate(self, floor: int) -> "LaurentSeries":
        """Forget every coefficient below ``floor``."""
        if not self.exact and floor <= self.lo:
            return self
        if self.is_zero():
            return LaurentSeries(self.field, floor - 1, _EMPTY, exact=False)
        keep = self.hi - floor + 1
        if keep <= 0:
            return LaurentSeries(self.field, floor - 1, _EMPTY, exact=False)
        arr = self.coeffs[:keep]
        if arr.size < keep:
            arr = np.concatenate([arr, np.zeros(keep - arr.size, dtype=np.int64)])
        return LaurentSeries(self.field, self.hi, arr, exact=False)

    def as_exact(self) -> "LaurentSeries":
        """Treat the known coefficients as the whole (finite) series."""
        return LaurentSeries(self.field, self.hi, self.coeffs, exact=True)

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Coefficient agreement on the range both series certify."""
        floors = [s.lo for s in (self, other) if not s.exact]
        if self.exact and other.exact:
            return self == other
        f = max(floors)
        return self.truncate(f) == other.truncate(f)

    # -- arithmetic -----------------------------------------------------------
    def _dense(self, hi: int, lo: int) -> np.ndarray:
        out = np.zeros(hi - lo + 1, dtype=np.int64)
        if self.coeffs.size == 0:
            return out
        top = min(self.hi, hi)
        bot = max(self.lo, lo)
        if top >= bot:
            out[hi - top: hi - bot + 1] = self.coeffs[self.hi - top: self.hi - bot + 1]
        return out

    def _check(self, other):
        if isinstance(other, LaurentSeries):
            if other.field is not self.field:
                raise FieldError("series over different fields")
            return other
        if isinstance(other, TPoly):
            return LaurentSeries.from_tpoly(other)
        if isinstance(other, (int, FieldElement)):
            return LaurentSeries.monomial(self.field, 0, other)
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return series_add(self, o)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, self.hi, self.field.vneg(self.coeffs), self.exact)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return series_add(self, -o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = other.value if isinstance(other, FieldElement) else int(other) % self.field.p
            return self.scale(c)
        o = self._check(other)
        if o is NotImplemented:
            return o
        return series_mul(self, o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return series_mul(self, series_inv(o))

    def __pow__(self, e: int):
        if e < 0:
            return series_inv(self) ** (-e)
        result = LaurentSeries.monomial(self.field, 0, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: int) -> "LaurentSeries":
        if c == 0:
            if self.exact:
                return LaurentSeries.zero(self.field)
            return LaurentSeries(self.field, self.lo - 1, _EMPTY, exact=False)
        return LaurentSeries(self.field, self.hi, self.field.vscale(c, self.coeffs), self.exact)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by T^k."""
        if self.is_exact_zero():
            return self
        return LaurentSeries(self.field, self.hi + k, self.coeffs, self.exact)

    def scale_T(self, v: FieldElement) -> "LaurentSeries":
        """Substitute T <- v*T: the coefficient of T^n is multiplied by v^n."""
        F = self.field
        if self.coeffs.size == 0:
            return self
        n = self.coeffs.size
        step = F.inv(v.value)
        powers = np.empty(n, dtype=np.int64)
        acc = F.pow(v.value, self.hi)
        for i in range(n):
            powers[i] = acc
            acc = F.mul(acc, step)
        return LaurentSeries(F, self.hi, F.vmul(powers, self.coeffs), self.exact)

    # -- comparison / printing ------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (
            self.field is other.field
            and self.exact == other.exact
            and self.lo == other.lo
            and (self.is_zero() or self.hi == other.hi)
            and np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.field.key(), self.hi, self.exact, self.coeffs.tobytes()))

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"LaurentSeries({self})"


def format_series(a: LaurentSeries, max_terms: int | None = None) -> str:
    parts = []
    shown = 0
    for i, c in enumerate(a.coeffs):
        if not c:
            continue
        if max_terms is not None and shown >= max_terms:
            parts.append("...")
            break
        cs = a.field.format(int(c))
        if a.field.n > 1 and c >= a.field.p:
            cs = f"({cs})"
        parts.append(f"{cs}*T^{a.hi - i}")
        shown += 1
    if not a.exact:
        parts.append(f"O(T^{a.lo - 1})")
    return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# core operations
# ---------------------------------------------------------------------------

def series_from_rational(f: RationalFunc, terms: int) -> LaurentSeries:
    """Expansion of ``f`` in powers of 1/T with ``terms`` coefficients from the top."""
    F = f.field
    if f.is_zero():
        return LaurentSeries.zero(F)
    num, den = f.num, f.den
    if np.count_nonzero(den.coeffs) == 1:
        return LaurentSeries.from_tpoly(num).shift(-den.degree) if den.degree else LaurentSeries.from_tpoly(num)
    hi = num.degree - den.degree
    n = max(terms, 1)
    inv_den = _inv_trunc(F, den.coeffs[::-1], n)
    coeffs = F.poly_mul_trunc(num.coeffs[::-1], inv_den, n)
    if coeffs.size < n:
        coeffs = np.concatenate([coeffs, np.zeros(n - coeffs.size, dtype=np.int64)])
    return LaurentSeries(F, hi, coeffs, exact=False)


def _inv_trunc(F: Field, a: np.ndarray, n: int) -> np.ndarray:
    """First n coefficients of 1/a(z) for a(0) != 0, by Newton doubling."""
    g = np.array([F.inv(int(a[0]))], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        ag = F.poly_mul_trunc(a, g, k)
        # g <- g * (2 - a g)
        two_minus = F.vneg(ag)
        if two_minus.size == 0:
            two_minus = np.zeros(1, dtype=np.int64)
        two_minus = two_minus.copy()
        two_minus[0] = F.add(int(two_minus[0]), 2 % F.p)
        g = F.poly_mul_trunc(g, two_minus, k)
    if g.size < n:
        g = np.concatenate([g, np.zeros(n - g.size, dtype=np.int64)])
    return g[:n]


def series_add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    if a.is_exact_zero():
        return b
    if b.is_exact_zero():
        return a
    F = a.field
    floors = [s.lo for s in (a, b) if not s.exact]
    floor = max(floors) if floors else None
    hi = max(a.hi, b.hi)
    lo = floor if floor is not None else min(a.lo, b.lo)
    if hi < lo:
        return LaurentSeries(F, lo - 1, _EMPTY, exact=False)
    out = F.vadd(a._dense(hi, lo), b._dense(hi, lo))
    return LaurentSeries(F, hi, out, exact=floor is None)


def series_mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    F = a.field
    if a.is_exact_zero() or b.is_exact_zero():
        return LaurentSeries.zero(F)
    cands = []
    if not a.exact:
        cands.append(a.lo + b.hi)
    if not b.exact:
        cands.append(b.lo + a.hi)
    floor = max(cands) if cands else None
    hi = a.hi + b.hi
    if a.is_zero() or b.is_zero():
        return LaurentSeries(F, floor - 1, _EMPTY, exact=False)
    if floor is None:
        return LaurentSeries(F, hi, F.poly_mul(a.coeffs, b.coeffs), exact=True)
    n = hi - floor + 1
    if n <= 0:
        return LaurentSeries(F, floor - 1, _EMPTY, exact=False)
    out = F.poly_mul_trunc(a.coeffs, b.coeffs, n)
    if out.size < n:
        out = np.concatenate([out, np.zeros(n - out.size, dtype=np.int64)])
    return LaurentSeries(F, hi, out, exact=False)


def series_inv(a: LaurentSeries, terms: int | None = None) -> LaurentSeries:
    """1/a.  Exact inputs other than monomials need ``terms``."""
    F = a.field
    if a.is_exact_zero():
        raise ZeroDivisionError("inverse of the zero series")
    if a.is_zero():
        raise PrecisionError("leading coefficient is below the precision floor")
    if a.exact and a.coeffs.size == 1:
        return LaurentSeries(F, -a.hi, [F.inv(int(a.coeffs[0]))], exact=True)
    if a.exact:
        if terms is None:
            raise PrecisionError("inverting an exact non-monomial series needs a term count")
        n = terms
    else:
        n = a.coeffs.size if terms is None else min(terms, a.coeffs.size)
    return LaurentSeries(F, -a.hi, _inv_trunc(F, a.coeffs, n), exact=False)


def series_frobenius(a: LaurentSeries, e: int | None = None) -> LaurentSeries:
    """a^e for e a power of the characteristic, computed coefficient-wise."""
    F = a.field
    e = F.p if e is None else e
    t = e
    while t > 1 and t % F.p == 0:
        t //= F.p
    if t != 1 or e < 1:
        raise FieldError(f"{e} is not a power of the characteristic {F.p}")
    if e == 1:
        return a
    if a.is_zero():
        if a.exact:
            return a
        return LaurentSeries(F, e * (a.lo - 1), _EMPTY, exact=False)
    n = a.coeffs.size
    size = e * (n - 1) + 1 + (0 if a.exact else e - 1)
    out = np.zeros(size, dtype=np.int64)
    out[: e * (n - 1) + 1: e] = F.vfrobenius(a.coeffs, e)
    return LaurentSeries(F, e * a.hi, out, exact=a.exact)


def series_polypart(a: LaurentSeries) -> tuple[TPoly, LaurentSeries]:
    """Split into the polynomial part (exponents >= 0) and the remainder."""
    F = a.field
    if not a.exact and a.lo > 0:
        raise PrecisionError(f"precision floor {a.lo} is above T^0; polynomial part not certified")
    if a.is_zero() or a.hi < 0:
        return TPoly.zero(F), a
    k = a.hi + 1  # number of stored coefficients with exponent >= 0
    head = a.coeffs[:k]
    poly = TPoly(F, head[::-1].copy(), _trusted=True)
    rest = LaurentSeries(F, -1, a.coeffs[k:], exact=a.exact)
    return poly, rest


def series_compare_zero_to(a: LaurentSeries, floor: int) -> bool:
    """True when every coefficient of ``a`` at exponents >= floor is certified zero."""
    if not a.exact and a.lo > floor:
        return False
    return a.is_zero() or a.hi < floor


# ---------------------------------------------------------------------------
# evaluation of X-polynomials and Newton iteration
# ---------------------------------------------------------------------------

def rf_exponent(c: RationalFunc) -> int:
    return c.num.degree - c.den.degree


def coeff_series(c: RationalFunc, floor: int) -> LaurentSeries:
    """Series of ``c`` certified down to ``floor`` (exact when ``c`` is a Laurent polynomial)."""
    if c.is_zero():
        return LaurentSeries.zero(c.field)
    if np.count_nonzero(c.den.coeffs) == 1:
        return series_from_rational(c, 1)
    terms = rf_exponent(c) - floor + 1
    if terms <= 0:
        return LaurentSeries(c.field, floor - 1, _EMPTY, exact=False)
    return series_from_rational(c, terms)


def eval_xpoly(s: XPoly, x: LaurentSeries, floor: int | None = None) -> LaurentSeries:
    """Horner evaluation of ``s`` at ``x``.

    With ``floor`` given, intermediate results are truncated so that the value is
    certified down to ``floor`` whenever the inputs allow it (the returned floor
    is the propagated one and may be higher if ``x`` is imprecise).
    """
    F = s.field
    if s.is_zero():
        return LaurentSeries.zero(F)
    n = s.degree
    if floor is None:
        if any(not c.is_zero() and np.count_nonzero(c.den.coeffs) != 1 for c in s.coeffs):
            raise PrecisionError("rational coefficients need an evaluation floor")
        acc = coeff_series(s.coeffs[n], 0)
        for i in range(n - 1, -1, -1):
            acc = acc * x + coeff_series(s.coeffs[i], 0)
        return acc
    e = x.hi
    acc = coeff_series(s.coeffs[n], floor - n * e).truncate(floor - n * e)
    for i in range(n - 1, -1, -1):
        f_i = floor - i * e
        acc = (acc * x).truncate(f_i) + coeff_series(s.coeffs[i], f_i).truncate(f_i)
    return acc


def _hensel_shift(s: XPoly, e: int) -> int:
    return max(rf_exponent(c) + e * i for i, c in enumerate(s.coeffs) if not c.is_zero())


def newton_root(s: XPoly, seed, terms: int, max_rounds: int = 64) -> LaurentSeries:
    """Root of ``s`` in F_q((1/T)) near ``seed``, with ``terms`` certified coefficients.

    Hensel's lemma is applied after the rescaling X = T^e Y, s -> T^-c s(T^e Y)
    that makes the equation integral at the seed (e = leading exponent of the
    seed).  Each reported coefficient is certified by the a-posteriori bound
    |x - root| <= |s(x)| / |s'(x)| evaluated on the final iterate.
    """
    if s.degree is None or s.degree < 1:
        raise NewtonError("equation must have X-degree >= 1")
    if isinstance(seed, TPoly):
        x = LaurentSeries.from_tpoly(seed)
    elif isinstance(seed, LaurentSeries):
        x = seed.as_exact()
    else:
        raise TypeError("seed must be a TPoly or LaurentSeries")
    if x.is_zero():
        raise NewtonError("seed must be nonzero")
    if terms < 1:
        raise ValueError("terms must be positive")
    e = x.hi
    c = _hensel_shift(s, e)
    ds = s.derivative()
    if ds.is_zero():
        raise NewtonError("formal derivative vanishes identically (inseparable equation)")
    top_d = _hensel_shift(ds, e)

    def slope(x, depth):
        floor = top_d - depth
        for _ in range(6):
            d = eval_xpoly(ds, x, floor)
            if not d.is_zero():
                return d
            floor -= 2 * depth
        raise NewtonError("s'(x) is indistinguishable from zero at working precision")

    d = slope(x, max(16, terms))
    Ed = d.hi
    bound = 2 * e - c + 2 * Ed  # Hensel: need E(s(x)) < bound
    r = eval_xpoly(s, x, bound)
    if r.is_exact_zero():
        return x
    if not r.is_zero():
        raise NewtonError(
            f"Hensel condition fails at the seed: |s(seed)| = |T|^{r.hi}, need < |T|^{bound}"
        )
    err = bound - Ed  # seed error exponent is below this
    digits = max(16, 2 * (e - err) + 8)
    target_lo = e - terms + 1
    guard = 4
    for _ in range(max_rounds):
        work = max(e - digits, target_lo - guard)
        r = eval_xpoly(s, x, work + Ed - 1)
        if r.is_exact_zero():
            return x
        if not r.is_zero():
            Er = r.hi
            d = eval_xpoly(ds, x, work + 2 * Ed - Er - 2)
            if d.is_zero() or d.hi != Ed:
                raise NewtonError("iteration left the Hensel disc of the seed")
            delta = series_mul(r, series_inv(d))
            x = (x - delta).truncate(max(work, delta.lo)).as_exact()
        if work > target_lo - guard:
            digits *= 2
            continue
        # certification on the current iterate
        r = eval_xpoly(s, x, target_lo + Ed - 1)
        if r.is_exact_zero():
            return x
        d = eval_xpoly(ds, x, Ed - 1)
        if d.is_zero() or d.hi != Ed:
            raise NewtonError("iteration left the Hensel disc of the seed")
        Er = r.hi if not r.is_zero() else r.lo - 1
        if Er >= 2 * e - c + 2 * Ed:
            raise NewtonError("iteration left the Hensel disc of the seed")
        cert = Er - Ed + 1
        lo = x.hi - terms + 1
        if cert <= lo:
            return x.truncate(lo)
        guard *= 2
    raise NewtonError("Newton iteration did not reach the requested precision")
