import os
import subprocess
import sys

import numpy as np
import pytest

from berezin_lab import BACKEND, _pykernels

kernels = pytest.importorskip("berezin_lab._kernels")


def test_compiled_backend_selected():
    assert BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, BEREZIN_LAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import berezin_lab; print(berezin_lab.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


def _shift(N, beta):
    B = np.zeros((N, N), complex)
    j = np.arange(N - 1)
    B[j + 1, j] = beta**j
    return B


@pytest.mark.parametrize("kind", [0, 1])
@pytest.mark.parametrize("case", ["shift", "dense", "banded", "zero"])
def test_kernel_forms_parity(kind, case):
    rng = np.random.default_rng(7)
    N = 96
    if case == "shift":
        B = _shift(N, 0.4 + 0.3j)
    elif case == "dense":
        B = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    elif case == "banded":
        B = np.triu(np.tril(rng.standard_normal((N, N)), 3), -2) + 0j
        B[:10] = 0
    else:
        B = np.zeros((N, N), complex)
    lam = 0.97 * np.sqrt(rng.uniform(size=500)) * np.exp(2j * np.pi * rng.uniform(size=500))
    a = kernels.kernel_forms(kernels.prepare(B), lam, kind)
    b = _pykernels.kernel_forms(_pykernels.prepare(B), lam, kind)
    raw = kernels.kernel_forms(B, lam, kind)
    scale = max(np.abs(B).sum(), 1.0)
    for x, y, z in zip(a, b, raw):
        assert np.max(np.abs(np.asarray(x) - np.asarray(y))) <= 1e-12 * scale
        assert np.array_equal(np.asarray(x), np.asarray(z))


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_jacobi_parity(n):
    rng = np.random.default_rng(n)
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = G + G.conj().T
    w1, V1, *_ = kernels.jacobi_eigh(H, 1e-15, 100)
    w2, V2, *_ = _pykernels.jacobi_eigh(H, 1e-15, 100)
    assert np.allclose(w1, w2, atol=1e-12 * np.abs(w2).max())
    for V, w in ((V1, w1), (V2, w2)):
        assert np.allclose((V * w) @ V.conj().T, H, atol=1e-12 * np.abs(H).max())
