"""Compiled kernels against the numpy fallback.

Times the two hot kernels on representative inputs and checks that both
backends agree. Run with ``python3 benchmarks/bench_kernels.py``; add
``--json`` for machine-readable output.
"""
import argparse
import json
import timeit

import numpy as np

from berezin_lab import _pykernels

try:
    from berezin_lab import _kernels
except ImportError:
    _kernels = None


def _shift(N, beta=0.5):
    B = np.zeros((N, N), dtype=np.complex128)
    j = np.arange(N - 1)
    B[j + 1, j] = beta**j
    return B


def _dense(rng, n):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (G + G.conj().T)


def cases(rng):
    lam = 0.95 * np.sqrt(rng.uniform(size=3072)) * np.exp(2j * np.pi * rng.uniform(size=3072))
    yield "kernel_forms shift N=256, 3072 pts", "kernel_forms", (_shift(256), lam, 0)
    yield "kernel_forms shift N=1024, 3072 pts", "kernel_forms", (_shift(1024), lam, 1)
    yield "kernel_forms dense N=64, 3072 pts", "kernel_forms", (rng.standard_normal((64, 64)) + 0j, lam, 0)
    for n in (4, 8, 16):
        yield f"jacobi_eigh n={n}", "jacobi_eigh", (_dense(rng, n), 1e-15, 100)


def _agree(name, a, b):
    if name == "kernel_forms":
        return max(float(np.max(np.abs(x - y))) for x, y in zip(a, b))
    return float(np.max(np.abs(a[0] - b[0])))


def run(repeat=5):
    rng = np.random.default_rng(0)
    rows = []
    for label, name, args in cases(rng):
        py = getattr(_pykernels, name)
        t_py = min(timeit.repeat(lambda: py(*args), number=1, repeat=repeat))
        row = {"case": label, "python_s": t_py}
        if _kernels is not None:
            cy = getattr(_kernels, name)
            if name == "kernel_forms":
                prepared = _kernels.prepare(args[0])
                call = lambda: cy(prepared, *args[1:])  # noqa: E731
            else:
                call = lambda: cy(*args)  # noqa: E731
            t_cy = min(timeit.repeat(call, number=1, repeat=repeat))
            row.update(cython_s=t_cy, speedup=t_py / t_cy, max_abs_diff=_agree(name, cy(*args), py(*args)))
        rows.append(row)
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = run(args.repeat)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    if _kernels is None:
        print("compiled kernels not built; timing the fallback only")
    for r in rows:
        if "cython_s" in r:
            print(f"{r['case']:40s} python {r['python_s'] * 1e3:9.2f} ms  cython {r['cython_s'] * 1e3:9.2f} ms"
                  f"  x{r['speedup']:7.1f}  diff {r['max_abs_diff']:.1e}")
        else:
            print(f"{r['case']:40s} python {r['python_s'] * 1e3:9.2f} ms")


if __name__ == "__main__":
    main()
