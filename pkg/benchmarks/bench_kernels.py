"""Numba kernels against their pure-numpy bodies.

    python3 benchmarks/bench_kernels.py [--sizes 64 512 4096] [--repeat 5]

Kernel timings run in-process (both bodies are importable side by side).  The
end-to-end rows run a pipeline in a subprocess per backend, switched with
HYPERCF_PURE_NUMPY.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hypercf import _accel
from hypercf.ffield import GF


def best_of(fn, repeat):
    fn()  # warm-up (and JIT compile)
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_rows(sizes, repeat):
    rng = np.random.default_rng(0)
    rows = []
    p = 199
    F4 = GF(2, 2)
    for n in sizes:
        a = rng.integers(0, p, n, dtype=np.int64)
        b = rng.integers(1, p, n, dtype=np.int64)
        d = rng.integers(1, p, max(n // 4, 1), dtype=np.int64)
        inv = pow(int(d[-1]), -1, p)
        at = rng.integers(0, 4, n, dtype=np.int64)
        bt = rng.integers(1, 4, n, dtype=np.int64)
        cases = {
            "mul_p": (lambda k: k.mul_p(a, b, p)),
            "mul_trunc_p": (lambda k: k.mul_trunc_p(a, b, n, p)),
            "divmod_p": (lambda k: k.divmod_p(a, d, inv, p)),
            "mul_tab (F_4)": (lambda k: k.mul_tab(at, bt, F4.add_t, F4.mul_t)),
        }
        for name, call in cases.items():
            t_np = best_of(lambda: call(NP), repeat)
            t_nb = best_of(lambda: call(NB), repeat) if NB else float("nan")
            rows.append((name, n, t_np, t_nb))
    return rows


class NP:
    mul_p = staticmethod(_accel.np_mul_p)
    mul_trunc_p = staticmethod(_accel.np_mul_trunc_p)
    divmod_p = staticmethod(_accel.np_divmod_p)
    mul_tab = staticmethod(_accel.np_mul_tab)


NB = None
if _accel.HAVE_NUMBA:
    class NB:  # noqa: F811
        mul_p = staticmethod(_accel.nb_mul_p)
        mul_trunc_p = staticmethod(_accel.nb_mul_trunc_p)
        divmod_p = staticmethod(_accel.nb_divmod_p)
        mul_tab = staticmethod(_accel.nb_mul_tab)


PIPELINES = {
    "quartic root p=13, 4000 terms": "rqe_root(13, 4000)",
    "divisibility p=97": "rqe_divides(97)",
    "divisibility p=199": "rqe_divides(199)",
}


def pipeline_rows():
    rows = []
    for name, code in PIPELINES.items():
        timing = ("import time; from hypercf.hyperq import rqe_divides, rqe_root; rqe_root(7, 50); rqe_divides(7);"
                  "t0 = time.perf_counter(); {}; print(time.perf_counter() - t0)")
        out = {}
        for flag in ("1", "0"):
            env = dict(os.environ, HYPERCF_PURE_NUMPY=flag)
            # first run fills the numba cache; the timed run also warms up before timing
            subprocess.run([sys.executable, "-c", "from hypercf.hyperq import *; " + code], env=env, check=True)
            res = subprocess.run([sys.executable, "-c", timing.format(code)], env=env, check=True, capture_output=True, text=True)
            out[flag] = float(res.stdout.strip())
        rows.append((name, out["1"], out["0"]))
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 512, 4096])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--no-pipelines", action="store_true")
    args = ap.parse_args()

    print(f"{'kernel':<16}{'n':>7}{'numpy (ms)':>14}{'numba (ms)':>14}{'speedup':>10}")
    for name, n, t_np, t_nb in kernel_rows(args.sizes, args.repeat):
        print(f"{name:<16}{n:>7}{t_np * 1e3:>14.3f}{t_nb * 1e3:>14.3f}{t_np / t_nb:>9.1f}x")
    if not args.no_pipelines:
        print()
        print(f"{'pipeline':<34}{'numpy (s)':>12}{'numba (s)':>12}{'speedup':>10}")
        for name, t_np, t_nb in pipeline_rows():
            print(f"{name:<34}{t_np:>12.3f}{t_nb:>12.3f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
