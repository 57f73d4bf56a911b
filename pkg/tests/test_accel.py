import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypercf import _accel
from hypercf.ffield import GF


def arrays(q, min_size=0, max_size=40):
    return st.lists(st.integers(0, q - 1), min_size=min_size, max_size=max_size).map(lambda c: np.array(c, dtype=np.int64))


def _kernels():
    out = [("numpy", _accel)]
    if _accel.HAVE_NUMBA:
        out.append(("numba", type("nb", (), {
            "mul_p": staticmethod(_accel.nb_mul_p),
            "mul_trunc_p": staticmethod(_accel.nb_mul_trunc_p),
            "divmod_p": staticmethod(_accel.nb_divmod_p),
            "mul_tab": staticmethod(_accel.nb_mul_tab),
            "mul_trunc_tab": staticmethod(_accel.nb_mul_trunc_tab),
            "divmod_tab": staticmethod(_accel.nb_divmod_tab),
        })))
    return out


def _trim(x):
    x = np.asarray(x)
    nz = np.flatnonzero(x)
    return x[: nz[-1] + 1] if nz.size else x[:0]


@given(st.sampled_from([2, 3, 13, 199]), st.data())
def test_prime_kernels_agree(p, data):
    a = data.draw(arrays(p))
    b = data.draw(arrays(p, 1))
    b[-1] = b[-1] or 1
    ref = _accel.np_mul_p(a, b, p)
    # schoolbook oracle
    naive = np.zeros(max(a.size + b.size - 1, 0), dtype=np.int64)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            naive[i + j] = (naive[i + j] + int(x) * int(y)) % p
    assert np.array_equal(_trim(ref), _trim(naive))
    inv = pow(int(b[-1]), -1, p)
    for name, k in _kernels():
        assert np.array_equal(_trim(k.mul_p(a, b, p)), _trim(ref)), name
        n = data.draw(st.integers(0, 50))
        assert np.array_equal(_trim(k.mul_trunc_p(a, b, n, p)), _trim(ref[:n])), name
        q, r = k.divmod_p(a, b, inv, p)
        back = _accel.np_mul_p(q, b, p)
        total = np.zeros(max(back.size, r.size, a.size), dtype=np.int64)
        total[: back.size] += back
        total[: r.size] += r
        assert np.array_equal(_trim(total % p), _trim(a)), name
        assert _trim(r).size < b.size


@given(st.sampled_from([(2, 2), (3, 2), (2, 3)]), st.data())
def test_table_kernels_agree(pn, data):
    F = GF(*pn)
    a = data.draw(arrays(F.q))
    b = data.draw(arrays(F.q, 1))
    b[-1] = b[-1] or 1
    ref = _accel.np_mul_tab(a, b, F.add_t, F.mul_t)
    inv = F.inv(int(b[-1]))
    for name, k in _kernels():
        assert np.array_equal(_trim(k.mul_tab(a, b, F.add_t, F.mul_t)), _trim(ref)), name
        q, r = k.divmod_tab(a, b, inv, F.add_t, F.mul_t, F.neg_t)
        qb = _accel.np_mul_tab(q, b, F.add_t, F.mul_t)
        n = max(qb.size, r.size, a.size)
        total = F.add_t[_pad(qb, n), _pad(r, n)]
        assert np.array_equal(_trim(total), _trim(a)), name
        assert _trim(r).size < b.size


def _pad(x, n):
    out = np.zeros(max(n, x.size), dtype=np.int64)
    out[: x.size] = x
    return out


def test_backend_reports_flag():
    assert _accel.backend() in ("numba", "numpy")


@pytest.mark.parametrize("flag,expected", [("1", "numpy"), ("0", None)])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, HYPERCF_PURE_NUMPY=flag)
    out = subprocess.run([sys.executable, "-c", "from hypercf import _accel; print(_accel.backend())"],
                         env=env, capture_output=True, text=True, check=True).stdout.strip()
    assert out == (expected or _accel.backend())


def test_pure_numpy_pipeline_matches():
    code = ("from hypercf.hyperq import rqe_divides, rqe_expansion;"
            "r = rqe_divides(13); e, _ = rqe_expansion(7, 30);"
            "print(r.divides, [str(a) for a in e.quotients[:30]])")
    outs = []
    for flag in ("1", "0"):
        env = dict(os.environ, HYPERCF_PURE_NUMPY=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout)
    assert outs[0] == outs[1] and outs[0].startswith("True")
