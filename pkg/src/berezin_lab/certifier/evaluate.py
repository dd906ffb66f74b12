"""Berezin quantities of matrices on ``C^n`` with the standard kernel.

Normalized kernels are the standard basis vectors, so the transform is the
diagonal and ``||T k_i||`` is the ``i``-th column norm. These vectorized
helpers are what the claim checks use; the engine computes the same numbers
through its sweep machinery, and the tests compare the two routes.
"""
import numpy as np

from ..means import InterpolatedMean


def transform(X):
    return np.diagonal(X)


def kernel_norms(X):
    return np.sqrt(np.sum(X.real**2 + X.imag**2, axis=0))


def hdiag(H):
    """``<H e_i, e_i>`` for Hermitian ``H`` as a real array."""
    return np.real(np.diagonal(H)).copy()


def ber(X):
    return float(np.max(np.abs(np.diagonal(X))))


def ber_norm(X):
    return float(np.max(kernel_norms(X)))


def c_tilde(X):
    return float(np.min(np.abs(np.diagonal(X))))


def sigma_points(X, mean: InterpolatedMean, p):
    """Pointwise ``|T~|^p s_mu ||T k||^p``."""
    a = np.abs(np.diagonal(X)) ** p
    b = kernel_norms(X) ** p
    return np.asarray(mean(a, b), dtype=float)


def sigma_p(X, mean: InterpolatedMean, p):
    """``||T||_sigma^p``."""
    return float(np.max(sigma_points(X, mean, p)))


def sigma(X, mean: InterpolatedMean, p):
    return sigma_p(X, mean, p) ** (1.0 / p)


def inf_mu_ber(x, y):
    """Exact ``min_{mu in [0,1]} max_i (mu x_i + (1-mu) y_i)`` and its minimizer.

    The objective is convex and piecewise linear, so the minimum sits at an
    endpoint or where two of the lines cross.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = x - y
    cands = [0.0, 1.0]
    n = x.size
    for i in range(n):
        for j in range(i + 1, n):
            den = s[i] - s[j]
            if den != 0.0:
                mu = (y[j] - y[i]) / den
                if 0.0 < mu < 1.0:
                    cands.append(float(mu))
    cands = np.array(sorted(set(cands)))
    vals = np.max(cands[:, None] * x[None, :] + (1.0 - cands[:, None]) * y[None, :], axis=1)
    k = int(np.argmin(vals))
    return float(vals[k]), float(cands[k])
