"""Polynomials in T, rational functions in T, and polynomials in X over F_q(T).

``TPoly`` wraps a dense ``int64`` coefficient vector (ascending powers of T,
entries encoded as in :mod:`hypercf.ffield`).  The zero polynomial has an empty
vector and ``degree is None``; there is no integer stand-in for deg(0).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .ffield import Field, FieldElement, FieldError, from_rational_literal

_EMPTY = np.zeros(0, dtype=np.int64)


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(c)
    if nz.size == 0:
        return _EMPTY
    return c[: nz[-1] + 1]


class TPoly:
    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs, _trusted: bool = False):
        self.field = field
        if _trusted:
            arr = coeffs
        else:
            arr = np.asarray(coeffs, dtype=np.int64)
            if arr.ndim != 1:
                raise ValueError("coefficients must be one-dimensional")
            if field.n == 1:
                arr = arr % field.p
            elif arr.size and (arr.min() < 0 or arr.max() >= field.q):
                raise FieldError("coefficient encoding out of range")
        arr = _trim(np.ascontiguousarray(arr, dtype=np.int64))
        arr.setflags(write=False)
        self.coeffs = arr
        self._hash = None

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> "TPoly":
        return cls(field, _EMPTY, _trusted=True)

    @classmethod
    def one(cls, field: Field) -> "TPoly":
        return cls.constant(field, 1)

    @classmethod
    def constant(cls, field: Field, c) -> "TPoly":
        return cls(field, np.array([_encode(field, c)], dtype=np.int64), _trusted=True)

    @classmethod
    def T(cls, field: Field) -> "TPoly":
        return cls.monomial(field, 1)

    @classmethod
    def monomial(cls, field: Field, e: int, c=1) -> "TPoly":
        arr = np.zeros(e + 1, dtype=np.int64)
        arr[e] = _encode(field, c)
        return cls(field, arr, _trusted=True)

    @classmethod
    def from_elements(cls, field: Field, elems: Iterable) -> "TPoly":
        return cls(field, np.array([_encode(field, c) for c in elems], dtype=np.int64), _trusted=True)

    # -- basic queries --------------------------------------------------------
    @property
    def degree(self) -> int | None:
        return self.coeffs.size - 1 if self.coeffs.size else None

    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    def is_one(self) -> bool:
        return self.coeffs.size == 1 and self.coeffs[0] == 1

    def is_constant(self) -> bool:
        return self.coeffs.size <= 1

    @property
    def lead(self) -> FieldElement:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return FieldElement(self.field, int(self.coeffs[-1]))

    def coeff(self, i: int) -> FieldElement:
        v = int(self.coeffs[i]) if 0 <= i < self.coeffs.size else 0
        return FieldElement(self.field, v)

    def __getitem__(self, i: int) -> FieldElement:
        return self.coeff(i)

    def monic(self) -> "TPoly":
        if self.is_zero() or self.coeffs[-1] == 1:
            return self
        return self.scale(self.field.inv(int(self.coeffs[-1])))

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "TPoly":
        if isinstance(other, TPoly):
            if other.field is not self.field:
                raise FieldError("polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement, Fraction)):
            return TPoly.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if a.size < b.size:
            a, b = b, a
        out = a.copy()
        out[: b.size] = self.field.vadd(out[: b.size], b)
        return TPoly(self.field, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return TPoly(self.field, self.field.vneg(self.coeffs), _trusted=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            return self.scale(_encode(self.field, other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return TPoly(self.field, self.field.poly_mul(self.coeffs, o.coeffs), _trusted=True)

    __rmul__ = __mul__

    def scale(self, c: int) -> "TPoly":
        """Multiply by the encoded constant ``c``."""
        return TPoly(self.field, self.field.vscale(c, self.coeffs), _trusted=True)

    def __pow__(self, e: int) -> "TPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result, base = TPoly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return tpoly_divmod(self, o)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def shift(self, k: int) -> "TPoly":
        """Multiply by T^k (k >= 0), or drop the k lowest terms (k < 0)."""
        if self.is_zero():
            return self
        if k >= 0:
            return TPoly(self.field, np.concatenate([np.zeros(k, dtype=np.int64), self.coeffs]), _trusted=True)
        return TPoly(self.field, self.coeffs[-k:].copy(), _trusted=True)

    def derivative(self) -> "TPoly":
        if self.coeffs.size <= 1:
            return TPoly.zero(self.field)
        k = np.arange(1, self.coeffs.size, dtype=np.int64) % self.field.p
        return TPoly(self.field, self.field.vmul(k, self.coeffs[1:]), _trusted=True)

    def __call__(self, x):
        """Horner evaluation at a field element (or anything closed under + and *)."""
        if isinstance(x, int):
            x = FieldElement(self.field, x % self.field.p)
        acc = None
        for c in self.coeffs[::-1]:
            ce = FieldElement(self.field, int(c))
            acc = ce if acc is None else acc * x + ce
        return FieldElement(self.field, 0) if acc is None else acc

    # -- comparison / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, FieldElement)):
            other = TPoly.constant(self.field, other)
        if not isinstance(other, TPoly):
            return NotImplemented
        return self.field is other.field and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.key(), self.coeffs.tobytes()))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return format_tpoly(self)

    def __repr__(self):
        return f"TPoly({self.field!r}, {self})"


def _encode(field: Field, c) -> int:
    if isinstance(c, FieldElement):
        if c.field is not field:
            raise FieldError("constant from a different field")
        return c.value
    if isinstance(c, Fraction):
        return from_rational_literal(c.numerator, c.denominator, field).value
    return int(c) % field.p


def tpoly_add(a: TPoly, b: TPoly) -> TPoly:
    return a + b


def tpoly_mul(a: TPoly, b: TPoly) -> TPoly:
    return a * b


def tpoly_divmod(a: TPoly, b: TPoly) -> tuple[TPoly, TPoly]:
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if a.field is not b.field:
        raise FieldError("polynomials over different fields")
    if a.coeffs.size < b.coeffs.size:
        return TPoly.zero(a.field), a
    q, r = a.field.poly_divmod(a.coeffs, b.coeffs)
    return TPoly(a.field, q, _trusted=True), TPoly(a.field, r, _trusted=True)


def tpoly_gcd(a: TPoly, b: TPoly) -> TPoly:
    """Monic gcd; gcd(a, 0) = monic(a)."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    while not b.is_zero():
        if b.coeffs.size == 1:
            return TPoly.one(a.field)
        a, b = b, tpoly_divmod(a, b)[1]
    return a.monic()


def tpoly_xgcd(a: TPoly, b: TPoly) -> tuple[TPoly, TPoly, TPoly]:
    """(g, s, t) with s*a + t*b = g monic."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = TPoly.one(F), TPoly.zero(F)
    t0, t1 = TPoly.zero(F), TPoly.one(F)
    while not r1.is_zero():
        q, r = tpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    c = F.inv(int(r0.coeffs[-1]))
    return r0.scale(c), s0.scale(c), t0.scale(c)


def tpoly_scale_T(a: TPoly, v: FieldElement) -> TPoly:
    """Substitute T <- v*T."""
    F = a.field
    powers = np.empty(a.coeffs.size, dtype=np.int64)
    acc = 1
    for i in range(a.coeffs.size):
        powers[i] = acc
        acc = F.mul(acc, v.value)
    return TPoly(F, F.vmul(powers, a.coeffs), _trusted=True)


# ---------------------------------------------------------------------------
# rational functions
# ---------------------------------------------------------------------------

class RationalFunc:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: TPoly, den: TPoly | None = None, _normalized: bool = False):
        if den is None:
            den = TPoly.one(num.field)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _normalized:
            if num.is_zero():
                den = TPoly.one(num.field)
            elif not den.is_constant():
                g = tpoly_gcd(num, den)
                if not g.is_one():
                    num, den = num // g, den // g
            c = int(den.coeffs[-1])
            if c != 1:
                ci = num.field.inv(c)
                num, den = num.scale(ci), den.scale(ci)
        self.num = num
        self.den = den

    @property
    def field(self) -> Field:
        return self.num.field

    @classmethod
    def from_poly(cls, a: TPoly) -> "RationalFunc":
        return cls(a, TPoly.one(a.field), _normalized=True)

    @classmethod
    def constant(cls, field: Field, c) -> "RationalFunc":
        return cls.from_poly(TPoly.constant(field, c))

    @classmethod
    def zero(cls, field: Field) -> "RationalFunc":
        return cls.from_poly(TPoly.zero(field))

    @classmethod
    def one(cls, field: Field) -> "RationalFunc":
        return cls.from_poly(TPoly.one(field))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def _coerce(self, other) -> "RationalFunc":
        if isinstance(other, RationalFunc):
            if other.field is not self.field:
                raise FieldError("rational functions over different fields")
            return other
        if isinstance(other, TPoly):
            return RationalFunc.from_poly(other)
        if isinstance(other, (int, FieldElement, Fraction)):
            return RationalFunc.constant(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den.is_one() and o.den.is_one():
            return RationalFunc(self.num + o.num, self.den, _normalized=True)
        if self.den == o.den:
            return RationalFunc(self.num + o.num, self.den)
        g = tpoly_gcd(self.den, o.den)
        if g.is_one():
            return RationalFunc(self.num * o.den + o.num * self.den, self.den * o.den, _normalized=True)
        d1, d2 = self.den // g, o.den // g
        num = self.num * d2 + o.num * d1
        den = self.den * d2
        return RationalFunc(num, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement)):
            c = _encode(self.field, other)
            if c == 0:
                return RationalFunc.zero(self.field)
            return RationalFunc(self.num.scale(c), self.den, _normalized=True)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return RationalFunc.zero(self.field)
        if self.den.is_one() and o.den.is_one():
            return RationalFunc(self.num * o.num, self.den, _normalized=True)
        a, b, c, d = self.num, self.den, o.num, o.den
        g1 = tpoly_gcd(a, d)
        g2 = tpoly_gcd(c, b)
        if not g1.is_one():
            a, d = a // g1, d // g1
        if not g2.is_one():
            c, b = c // g2, b // g2
        num, den = a * c, b * d
        k = int(den.coeffs[-1])
        if k != 1:
            ki = self.field.inv(k)
            num, den = num.scale(ki), den.scale(ki)
        return RationalFunc(num, den, _normalized=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunc(self.den, self.num, _normalized=False)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunc(self.num**e, self.den**e, _normalized=True)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, RationalFunc) else other
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    def polypart(self) -> TPoly:
        return self.num // self.den

    def scale_T(self, v: FieldElement) -> "RationalFunc":
        return RationalFunc(tpoly_scale_T(self.num, v), tpoly_scale_T(self.den, v))

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunc({self})"


# ---------------------------------------------------------------------------
# polynomials in X over F_q(T)
# ---------------------------------------------------------------------------

class XPoly:
    """Polynomial in X with :class:`RationalFunc` coefficients (ascending)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence):
        cs = [_to_rf(field, c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def X(cls, field: Field) -> "XPoly":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, field: Field, c) -> "XPoly":
        return cls(field, [c])

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> RationalFunc:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return RationalFunc.zero(self.field)

    @property
    def lead(self) -> RationalFunc:
        return self.coeffs[-1]

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.coeffs) if not c.is_zero()]

    def _coerce(self, other) -> "XPoly":
        if isinstance(other, XPoly):
            if other.field is not self.field:
                raise FieldError("X-polynomials over different fields")
            return other
        if isinstance(other, (int, FieldElement, Fraction, TPoly, RationalFunc)):
            return XPoly(self.field, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return XPoly(self.field, [self.coeff(i) + o.coeff(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return XPoly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return XPoly(self.field, [])
        out = [RationalFunc.zero(self.field)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return XPoly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result, base = XPoly(self.field, [1]), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> "XPoly":
        c = _to_rf(self.field, c)
        return XPoly(self.field, [a * c for a in self.coeffs])

    def __divmod__(self, other):
        return xpoly_divmod(self, self._coerce(other))

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def derivative(self) -> "XPoly":
        return XPoly(self.field, [c * (i % self.field.p) for i, c in enumerate(self.coeffs)][1:])

    def denominator_lcm(self) -> TPoly:
        l = TPoly.one(self.field)
        for c in self.coeffs:
            if not c.den.is_one():
                l = l * (c.den // tpoly_gcd(l, c.den))
        return l

    def clear_denominators(self) -> "XPoly":
        """Scale by the lcm of denominators and divide out the content."""
        l = self.denominator_lcm()
        polys = [(c * l).num for c in self.coeffs]
        g = None
        for a in polys:
            if not a.is_zero():
                g = a.monic() if g is None else tpoly_gcd(g, a)
        if g is None:
            return self
        polys = [a // g for a in polys]
        return XPoly(self.field, polys)

    def monic(self) -> "XPoly":
        if self.is_zero():
            return self
        return self.scale(self.lead.inverse())

    def map_coeffs(self, fn) -> "XPoly":
        return XPoly(self.field, [fn(c) for c in self.coeffs])

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, XPoly) else other
        if o is NotImplemented:
            return NotImplemented
        return self.field is o.field and self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        return format_xpoly(self)

    def __repr__(self):
        return f"XPoly({self})"


def _to_rf(field: Field, c) -> RationalFunc:
    if isinstance(c, RationalFunc):
        if c.field is not field:
            raise FieldError("coefficient from a different field")
        return c
    if isinstance(c, TPoly):
        if c.field is not field:
            raise FieldError("coefficient from a different field")
        return RationalFunc.from_poly(c)
    return RationalFunc.constant(field, c)


def xpoly_divmod(h: XPoly, p: XPoly) -> tuple[XPoly, XPoly]:
    if p.is_zero():
        raise ZeroDivisionError("division by the zero X-polynomial")
    F = h.field
    dp = p.degree
    rem = list(h.coeffs)
    if len(rem) - 1 < dp:
        return XPoly(F, []), h
    inv_lead = p.lead.inverse()
    quot = [RationalFunc.zero(F)] * (len(rem) - dp)
    for i in range(len(rem) - 1 - dp, -1, -1):
        top = rem[i + dp]
        if top.is_zero():
            continue
        c = top * inv_lead
        quot[i] = c
        for j in range(dp):
            pj = p.coeffs[j]
            if not pj.is_zero():
                rem[i + j] = rem[i + j] - c * pj
        rem[i + dp] = RationalFunc.zero(F)
    return XPoly(F, quot), XPoly(F, rem[:dp])


def xpoly_modpow_X(p: XPoly, r: int) -> XPoly:
    """X^r mod p by square-and-multiply on residues."""
    if r < 0:
        raise ValueError("negative exponent")
    if p.degree is None or p.degree < 1:
        raise ValueError("modulus must have X-degree >= 1")
    F = p.field
    result = XPoly(F, [1]) % p
    base = XPoly.X(F) % p
    for bit in bin(r)[2:]:
        result = (result * result) % p
        if bit == "1":
            result = (result * base) % p
    return result


# ---------------------------------------------------------------------------
# printing
# ---------------------------------------------------------------------------

def _format_coeff(field: Field, c: int) -> str:
    s = field.format(c)
    if field.n > 1 and c >= field.p:
        return f"({s})"
    return s


def _mono(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def format_tpoly(a: TPoly, var: str = "T") -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e in range(a.coeffs.size - 1, -1, -1):
        c = int(a.coeffs[e])
        if c == 0:
            continue
        cs = _format_coeff(a.field, c)
        m = _mono(var, e)
        if not m:
            parts.append(cs)
        elif c == 1:
            parts.append(m)
        else:
            parts.append(f"{cs}*{m}")
    return "+".join(parts)


def format_xpoly(h: XPoly) -> str:
    if h.is_zero():
        return "0"
    parts = []
    for e in range(len(h.coeffs) - 1, -1, -1):
        c = h.coeffs[e]
        if c.is_zero():
            continue
        cs = str(c)
        m = _mono("X", e)
        if not m:
            parts.append(cs)
            continue
        if c.is_poly() and c.num.is_one():
            parts.append(m)
            continue
        if not (c.is_poly() and np.count_nonzero(c.num.coeffs) == 1):
            cs = f"({cs})"
        parts.append(f"{cs}*{m}")
    return "+".join(parts)
