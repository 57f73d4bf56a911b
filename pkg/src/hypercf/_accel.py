"""Dense polynomial kernels over F_q.

Coefficient arrays are ``int64`` vectors in ascending exponent order.  Two
families exist: ``*_p`` kernels work in a prime field with plain modular
arithmetic, ``*_tab`` kernels work in any small field through precomputed
addition/multiplication tables indexed by the integer encoding of elements.

Every kernel has a numba-compiled body and a pure-numpy body.  The numba path
is used when numba imports and ``HYPERCF_PURE_NUMPY`` is unset (or ``0``).
"""
from __future__ import annotations

import os

import numpy as np

_FLAG = os.environ.get("HYPERCF_PURE_NUMPY", "").strip().lower()
PURE_NUMPY = _FLAG not in ("", "0", "false", "no")

try:  # pragma: no cover - depends on environment
    if PURE_NUMPY:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


# ---------------------------------------------------------------------------
# pure numpy bodies
# ---------------------------------------------------------------------------

def np_mul_p(a, b, p):
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    if a.size * (p - 1) * (p - 1) < 2**62:
        return np.convolve(a, b) % p
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i in np.flatnonzero(a):
        out[i:i + b.size] = (out[i:i + b.size] + a[i] * b) % p
    return out


def np_mul_trunc_p(a, b, n, p):
    return np_mul_p(a[:n], b[:n], p)[:n]


def np_divmod_p(a, b, inv_lead, p):
    m = b.size
    if a.size < m:
        return np.zeros(0, dtype=np.int64), a.copy()
    r = a.copy()
    q = np.zeros(a.size - m + 1, dtype=np.int64)
    for i in range(a.size - m, -1, -1):
        c = r[i + m - 1] * inv_lead % p
        if c:
            q[i] = c
            r[i:i + m] = (r[i:i + m] - c * b) % p
    return q, r[:m - 1]


def np_mul_tab(a, b, add, mul):
    if a.size == 0 or b.size == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(a.size + b.size - 1, dtype=np.int64)
    for i in np.flatnonzero(a):
        seg = out[i:i + b.size]
        out[i:i + b.size] = add[seg, mul[a[i], b]]
    return out


def np_mul_trunc_tab(a, b, n, add, mul):
    return np_mul_tab(a[:n], b[:n], add, mul)[:n]


def np_divmod_tab(a, b, inv_lead, add, mul, neg):
    m = b.size
    if a.size < m:
        return np.zeros(0, dtype=np.int64), a.copy()
    r = a.copy()
    q = np.zeros(a.size - m + 1, dtype=np.int64)
    nb = neg[b]
    for i in range(a.size - m, -1, -1):
        c = mul[r[i + m - 1], inv_lead]
        if c:
            q[i] = c
            r[i:i + m] = add[r[i:i + m], mul[c, nb]]
    return q, r[:m - 1]


# ---------------------------------------------------------------------------
# numba bodies
# ---------------------------------------------------------------------------

def _nb_mul_p(a, b, p):
    na = a.size
    nb = b.size
    if na == 0 or nb == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(na + nb - 1, dtype=np.int64)
    # reduce once at the end when the raw sums cannot overflow
    lazy = min(na, nb) * (p - 1) * (p - 1) < 2**62
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        if lazy:
            for j in range(nb):
                out[i + j] += ai * b[j]
        else:
            for j in range(nb):
                out[i + j] = (out[i + j] + ai * b[j]) % p
    if lazy:
        for k in range(out.size):
            out[k] %= p
    return out


def _nb_mul_trunc_p(a, b, n, p):
    na = min(a.size, n)
    nb = min(b.size, n)
    if na == 0 or nb == 0:
        return np.zeros(0, dtype=np.int64)
    size = min(na + nb - 1, n)
    out = np.zeros(size, dtype=np.int64)
    lazy = min(na, nb) * (p - 1) * (p - 1) < 2**62
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        top = min(nb, size - i)
        if lazy:
            for j in range(top):
                out[i + j] += ai * b[j]
        else:
            for j in range(top):
                out[i + j] = (out[i + j] + ai * b[j]) % p
    if lazy:
        for k in range(size):
            out[k] %= p
    return out


def _nb_divmod_p(a, b, inv_lead, p):
    m = b.size
    if a.size < m:
        return np.zeros(0, dtype=np.int64), a.copy()
    r = a.copy()
    q = np.zeros(a.size - m + 1, dtype=np.int64)
    for i in range(a.size - m, -1, -1):
        c = r[i + m - 1] * inv_lead % p
        if c != 0:
            q[i] = c
            for j in range(m):
                r[i + j] = (r[i + j] - c * b[j]) % p
    return q, r[:m - 1].copy()


def _nb_mul_tab(a, b, add, mul):
    na = a.size
    nb = b.size
    if na == 0 or nb == 0:
        return np.zeros(0, dtype=np.int64)
    out = np.zeros(na + nb - 1, dtype=np.int64)
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(nb):
            out[i + j] = add[out[i + j], mul[ai, b[j]]]
    return out


def _nb_mul_trunc_tab(a, b, n, add, mul):
    na = min(a.size, n)
    nb = min(b.size, n)
    if na == 0 or nb == 0:
        return np.zeros(0, dtype=np.int64)
    size = min(na + nb - 1, n)
    out = np.zeros(size, dtype=np.int64)
    for i in range(na):
        ai = a[i]
        if ai == 0:
            continue
        top = min(nb, size - i)
        for j in range(top):
            out[i + j] = add[out[i + j], mul[ai, b[j]]]
    return out


def _nb_divmod_tab(a, b, inv_lead, add, mul, neg):
    m = b.size
    if a.size < m:
        return np.zeros(0, dtype=np.int64), a.copy()
    r = a.copy()
    q = np.zeros(a.size - m + 1, dtype=np.int64)
    for i in range(a.size - m, -1, -1):
        c = mul[r[i + m - 1], inv_lead]
        if c != 0:
            q[i] = c
            for j in range(m):
                r[i + j] = add[r[i + j], mul[c, neg[b[j]]]]
    return q, r[:m - 1].copy()


if HAVE_NUMBA:
    nb_mul_p = njit(cache=True)(_nb_mul_p)
    nb_mul_trunc_p = njit(cache=True)(_nb_mul_trunc_p)
    nb_divmod_p = njit(cache=True)(_nb_divmod_p)
    nb_mul_tab = njit(cache=True)(_nb_mul_tab)
    nb_mul_trunc_tab = njit(cache=True)(_nb_mul_trunc_tab)
    nb_divmod_tab = njit(cache=True)(_nb_divmod_tab)

    mul_p = nb_mul_p
    mul_trunc_p = nb_mul_trunc_p
    divmod_p = nb_divmod_p
    mul_tab = nb_mul_tab
    mul_trunc_tab = nb_mul_trunc_tab
    divmod_tab = nb_divmod_tab
else:  # pragma: no cover
    mul_p = np_mul_p
    mul_trunc_p = np_mul_trunc_p
    divmod_p = np_divmod_p
    mul_tab = np_mul_tab
    mul_trunc_tab = np_mul_trunc_tab
    divmod_tab = np_divmod_tab


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"
