"""Exact arithmetic in small finite fields F_p and F_{p^n}.

Elements of ``F_{p^n}`` are encoded as integers ``c_0 + c_1 p + ... + c_{n-1} p^{n-1}``
where ``c_0 + c_1 u + ... + c_{n-1} u^{n-1}`` is the reduced representative modulo
the defining polynomial in ``u``.  For ``n == 1`` the encoding is the residue itself.

Extension fields precompute full addition and multiplication tables, which keeps
all polynomial kernels in :mod:`hypercf._accel` down to table lookups.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _accel

MAX_TABLE_ORDER = 1024


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _poly_rem_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    # ascending coefficient lists, b monic
    a = a[:]
    db = len(b) - 1
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = a[-1]
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        while a and a[-1] == 0:
            a.pop()
    return a


def is_irreducible_mod_p(modulus: list[int], p: int) -> bool:
    """Brute-force irreducibility test for a monic polynomial over F_p.

    ``modulus`` is ascending, e.g. ``[1, 1, 1]`` for u^2 + u + 1.
    """
    n = len(modulus) - 1
    if n < 1 or modulus[-1] % p != 1:
        return False
    if n == 1:
        return True
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            if not _poly_rem_mod_p(modulus, list(tail) + [1], p):
                return False
    return True


class Field:
    """The finite field F_q, q = p^n.  Use :func:`GF` to obtain instances."""

    def __init__(self, p: int, n: int = 1, modulus: tuple[int, ...] | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if n < 1:
            raise FieldError("extension degree must be >= 1")
        self.p = p
        self.n = n
        self.q = p**n
        if n == 1:
            self.modulus = None
        else:
            if modulus is None:
                modulus = default_modulus(p, n)
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] != 1:
                raise FieldError(f"modulus must be monic of degree {n}")
            if not is_irreducible_mod_p(list(modulus), p):
                raise FieldError(f"modulus {modulus} is reducible over F_{p}")
            if self.q > MAX_TABLE_ORDER:
                raise FieldError(f"extension fields are limited to q <= {MAX_TABLE_ORDER}")
            self.modulus = modulus
            self._build_tables()

    # -- construction helpers -------------------------------------------------
    def _build_tables(self):
        p, n, q = self.p, self.n, self.q
        idx = np.arange(q, dtype=np.int64)
        digits = np.stack([(idx // p**i) % p for i in range(n)], axis=1)
        weights = p ** np.arange(n, dtype=np.int64)
        self._digits = digits
        self.add_t = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        prod = np.zeros((q, q, 2 * n - 1), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                prod[:, :, i + j] += np.outer(digits[:, i], digits[:, j])
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[:, :, k] % p
            for t in range(n):
                prod[:, :, k - n + t] -= c * self.modulus[t]
        self.mul_t = (prod[:, :, :n] % p) @ weights
        self.neg_t = ((-digits) % p) @ weights
        inv = np.zeros(q, dtype=np.int64)
        rows, cols = np.nonzero(self.mul_t == 1)
        inv[rows] = cols
        self.inv_t = inv
        for name in ("add_t", "mul_t", "neg_t", "inv_t"):
            getattr(self, name).setflags(write=False)

    @property
    def is_prime_field(self) -> bool:
        return self.n == 1

    def key(self):
        return (self.p, self.n, self.modulus)

    def __repr__(self):
        if self.n == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.n}, modulus={self.modulus})"

    # -- scalar arithmetic on encoded ints ------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        return int(self.add_t[a, b])

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        return int(self.neg_t[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        return int(self.mul_t[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.n == 1:
            return _inv_mod(a, self.p)
        return int(self.inv_t[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if self.n == 1:
            return pow(a, e, self.p)
        result, base = 1, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def frobenius(self, a: int, e: int) -> int:
        """a**e for e a power of p; coefficient-wise on the u-representation."""
        if self.n == 1:
            return a
        digits = [(a // self.p**i) % self.p for i in range(self.n)]
        # (sum c_i u^i)^e = sum c_i (u^e)^i since c_i lies in the prime field
        ue = self.pow(self.p, e)
        acc, upow = 0, 1
        for c in digits:
            if c:
                acc = self.add(acc, self.mul(c, upow))
            upow = self.mul(upow, ue)
        return acc

    def from_int(self, k: int) -> int:
        return k % self.p

    def sqrt(self, a: int) -> int | None:
        """Smallest encoded r with r*r == a, or None when a is a non-square."""
        if self.n == 1:
            for r in range(self.p):
                if r * r % self.p == a:
                    return r
            return None
        hits = np.flatnonzero(np.diagonal(self.mul_t) == a)
        return int(hits[0]) if hits.size else None

    # -- vector arithmetic (numpy arrays of encoded ints) ---------------------
    def vadd(self, a, b):
        if self.n == 1:
            return (a + b) % self.p
        return self.add_t[a, b]

    def vneg(self, a):
        if self.n == 1:
            return (-a) % self.p
        return self.neg_t[a]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vscale(self, c: int, a):
        if self.n == 1:
            return (c * a) % self.p
        return self.mul_t[c, a]

    def vmul(self, a, b):
        if self.n == 1:
            return (a * b) % self.p
        return self.mul_t[a, b]

    def vfrobenius(self, a, e: int):
        if self.n == 1:
            return a
        table = np.array([self.frobenius(x, e) for x in range(self.q)], dtype=np.int64)
        return table[a]

    # -- polynomial kernels ---------------------------------------------------
    def poly_mul(self, a, b):
        if self.n == 1:
            return _accel.mul_p(a, b, self.p)
        return _accel.mul_tab(a, b, self.add_t, self.mul_t)

    def poly_mul_trunc(self, a, b, n: int):
        if self.n == 1:
            return _accel.mul_trunc_p(a, b, n, self.p)
        return _accel.mul_trunc_tab(a, b, n, self.add_t, self.mul_t)

    def poly_divmod(self, a, b):
        inv_lead = self.inv(int(b[-1]))
        if self.n == 1:
            return _accel.divmod_p(a, b, inv_lead, self.p)
        return _accel.divmod_tab(a, b, inv_lead, self.add_t, self.mul_t, self.neg_t)

    # -- elements -------------------------------------------------------------
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, Fraction):
            return from_rational_literal(value.numerator, value.denominator, self)
        return FieldElement(self, int(value) % self.p)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The adjoined root u (only for n > 1)."""
        if self.n == 1:
            raise FieldError("prime field has no generator u")
        return FieldElement(self, self.p)

    def elements(self):
        return [FieldElement(self, v) for v in range(self.q)]

    def format(self, a: int) -> str:
        if self.n == 1:
            return str(a)
        digits = [(a // self.p**i) % self.p for i in range(self.n)]
        parts = []
        for i in range(self.n - 1, -1, -1):
            c = digits[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                mono = "u" if i == 1 else f"u^{i}"
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"


def _inv_mod(a: int, p: int) -> int:
    # extended Euclid
    r0, r1, s0, s1 = a % p, p, 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise ZeroDivisionError(f"{a} is not invertible mod {p}")
    return s0 % p


def default_modulus(p: int, n: int) -> tuple[int, ...]:
    if (p, n) == (2, 2):
        return (1, 1, 1)
    if n == 2 and is_irreducible_mod_p([-2 % p, 0, 1], p):
        return (-2 % p, 0, 1)
    for tail in itertools.product(range(p), repeat=n):
        cand = list(reversed(tail)) + [1]
        if is_irreducible_mod_p(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")  # pragma: no cover


@functools.lru_cache(maxsize=None)
def _gf(p: int, n: int, modulus):
    return Field(p, n, modulus)


def GF(p: int, n: int = 1, modulus=None) -> Field:
    """Return the shared :class:`Field` for F_{p^n}."""
    if n > 1 and modulus is None:
        modulus = default_modulus(p, n)
    if modulus is not None:
        modulus = tuple(int(c) % p for c in modulus)
        n = len(modulus) - 1
    return _gf(p, n, modulus if n > 1 else None)


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: int

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f"mismatched fields {self.field!r} and {other.field!r}")
            return other.value
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.key(), self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        if self.field.n > 1 and self.value >= self.field.p:
            raise FieldError("element is not in the prime field")
        return self.value

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def frobenius(self, e: int | None = None) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.value, e or self.field.p))

    def in_prime_field(self) -> bool:
        return self.value < self.field.p

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"{self.field!r}({self})"


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_sqrt(a: FieldElement) -> FieldElement | None:
    r = a.field.sqrt(a.value)
    return None if r is None else FieldElement(a.field, r)


def from_rational_literal(num: int, den: int, field: Field) -> FieldElement:
    """The image of num/den under Z_(p) -> F_p -> F_q."""
    p = field.p
    if den % p == 0:
        raise FieldError(f"denominator {den} vanishes mod {p}")
    return FieldElement(field, num % p * _inv_mod(den % p, p) % p)


def binomial_mod(n: int, k: int, field: Field) -> FieldElement:
    if not 0 <= k <= n:
        raise FieldError("binomial requires 0 <= k <= n")
    return FieldElement(field, math.comb(n, k) % field.p)
