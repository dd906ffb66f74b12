"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex arrays; :func:`as_cmatrix` validates and
copies, which gives them value semantics at module boundaries. The Hermitian
eigensolver is cyclic Jacobi (dimensions here stay small and robustness
matters more than speed); the spectral radius of non-Hermitian matrices comes
from a Hessenberg reduction followed by shifted QR.
"""
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from . import _backend
from .config import DEFAULT, NumericConfig
from .errors import NoConvergence, NonHermitianInput, NotPSD, ParamOutOfRange


def as_cmatrix(a, square=False):
    """Validate ``a`` as a finite 2-D complex matrix and return a copy."""
    m = np.array(a, dtype=np.complex128, copy=True)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ParamOutOfRange(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ParamOutOfRange("matrix has non-finite entries")
    if square and m.shape[0] != m.shape[1]:
        raise ParamOutOfRange(f"expected a square matrix, got shape {m.shape}")
    return m


def adjoint(a):
    return np.conj(np.transpose(a))


class HermEig(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def herm_eig(H, cfg: NumericConfig = DEFAULT) -> HermEig:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is symmetrized before solving; an asymmetry larger than
    ``cfg.herm_tol * ||H||`` raises :class:`NonHermitianInput`.
    """
    H = as_cmatrix(H, square=True)
    scale = np.linalg.norm(H)
    asym = np.linalg.norm(H - adjoint(H))
    if asym > cfg.herm_tol * max(scale, np.finfo(float).tiny):
        raise NonHermitianInput(f"asymmetry {asym:.3e} exceeds tolerance for norm {scale:.3e}")
    H = 0.5 * (H + adjoint(H))
    w, V, sweeps, off_rel = _backend.jacobi_eigh(H, cfg.jacobi_tol, cfg.jacobi_max_sweeps)
    if off_rel > cfg.jacobi_tol and off_rel > 1e-13:
        raise NoConvergence(f"Jacobi stalled after {sweeps} sweeps (relative off-norm {off_rel:.3e})")
    return HermEig(w, V)


def psd_fn(H, f: Callable[[np.ndarray], np.ndarray], cfg: NumericConfig = DEFAULT):
    """Apply a scalar map to a positive semidefinite matrix by spectral calculus.

    Eigenvalues in ``[-clip_tol * ||H||, 0)`` are clipped to zero first;
    anything more negative raises :class:`NotPSD`.
    """
    w, V = herm_eig(H, cfg)
    scale = np.max(np.abs(w)) if w.size else 0.0
    if w.size and w[0] < -cfg.clip_tol * max(scale, np.finfo(float).tiny):
        raise NotPSD(f"eigenvalue {w[0]:.3e} below clipping tolerance")
    w = np.clip(w, 0.0, None)
    fw = np.asarray(f(w), dtype=float)
    out = (V * fw) @ adjoint(V)
    return 0.5 * (out + adjoint(out))


def psd_power(H, q, cfg: NumericConfig = DEFAULT):
    """``H**q`` for PSD ``H``; ``0**0`` is taken as 1 so ``q = 0`` gives the identity."""
    return psd_fn(H, lambda w: np.power(w, q), cfg)


def abs_op(T, cfg: NumericConfig = DEFAULT):
    """Operator absolute value ``|T| = (T*T)^(1/2)``."""
    T = as_cmatrix(T, square=True)
    return psd_fn(adjoint(T) @ T, np.sqrt, cfg)


def abs_power(T, q, cfg: NumericConfig = DEFAULT):
    """``|T|**q``; even integer ``q`` uses plain products of ``T*T``."""
    T = as_cmatrix(T, square=True)
    G = adjoint(T) @ T
    half = q / 2.0
    if half == int(half) and half >= 0:
        out = np.linalg.matrix_power(G, int(half))
        return 0.5 * (out + adjoint(out))
    return psd_fn(G, lambda w: np.power(w, half), cfg)


def op_norm(T, cfg: NumericConfig = DEFAULT) -> float:
    """Spectral norm, the square root of the top eigenvalue of ``T*T``."""
    T = as_cmatrix(T)
    G = adjoint(T) @ T if T.shape[0] >= T.shape[1] else T @ adjoint(T)
    w, _ = herm_eig(0.5 * (G + adjoint(G)), cfg)
    return float(np.sqrt(max(w[-1], 0.0)))


def real_part(T):
    T = as_cmatrix(T, square=True)
    return 0.5 * (T + adjoint(T))


def imag_part(T):
    T = as_cmatrix(T, square=True)
    return (T - adjoint(T)) / 2j


def hessenberg(A):
    """Householder reduction to upper Hessenberg form (similarity transform)."""
    H = as_cmatrix(A, square=True)
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k].copy()
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * alpha
        vn = np.linalg.norm(v)
        if vn == 0.0:
            continue
        v /= vn
        H[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, :])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _givens(a, b):
    """Complex Givens pair ``(c, s)`` with ``[[c, s], [-conj(s), c]] @ [a, b] = [r, 0]``."""
    if b == 0:
        return 1.0, 0j
    if a == 0:
        return 0.0, np.conj(b) / abs(b)
    na = abs(a)
    r = np.hypot(na, abs(b))
    c = na / r
    s = (a / na) * np.conj(b) / r
    return c, s


def hessenberg_eigvals(A, cfg: NumericConfig = DEFAULT):
    """Eigenvalues of a square matrix by shifted QR on its Hessenberg form."""
    H = hessenberg(A)
    n = H.shape[0]
    eigs = []
    budget = cfg.qr_iters_per_eig * max(n, 1)
    iters = 0
    m = n
    eps = np.finfo(float).eps
    while m > 0:
        if m == 1:
            eigs.append(H[0, 0])
            break
        # deflate from the bottom
        if abs(H[m - 1, m - 2]) <= eps * (abs(H[m - 1, m - 1]) + abs(H[m - 2, m - 2])) or (
            abs(H[m - 1, m - 2]) < 1e-300
        ):
            H[m - 1, m - 2] = 0.0
            eigs.append(H[m - 1, m - 1])
            m -= 1
            continue
        # start of the unreduced trailing block
        lo = m - 2
        while lo > 0 and abs(H[lo, lo - 1]) > eps * (abs(H[lo, lo]) + abs(H[lo - 1, lo - 1])):
            lo -= 1
        if lo > 0:
            H[lo, lo - 1] = 0.0
        if iters >= budget:
            raise NoConvergence(f"shifted QR did not converge in {budget} iterations")
        iters += 1
        a, b, c, d = H[m - 2, m - 2], H[m - 2, m - 1], H[m - 1, m - 2], H[m - 1, m - 1]
        if iters % 11 == 0:
            shift = d + 0.75 * abs(c)  # exceptional shift against cycling
        else:
            tr = a + d
            disc = np.sqrt((a - d) ** 2 / 4.0 + b * c)
            e1, e2 = tr / 2.0 + disc, tr / 2.0 - disc
            shift = e1 if abs(e1 - d) < abs(e2 - d) else e2
        for i in range(lo, m):
            H[i, i] -= shift
        rots = []
        for k in range(lo, m - 1):
            cc, ss = _givens(H[k, k], H[k + 1, k])
            rows = H[k:k + 2, k:m].copy()
            H[k, k:m] = cc * rows[0] + ss * rows[1]
            H[k + 1, k:m] = -np.conj(ss) * rows[0] + cc * rows[1]
            rots.append((cc, ss))
        for idx, (cc, ss) in enumerate(rots):
            k = lo + idx
            top = min(k + 2, m)
            cols = H[lo:top, k:k + 2].copy()
            H[lo:top, k] = cc * cols[:, 0] + np.conj(ss) * cols[:, 1]
            H[lo:top, k + 1] = -ss * cols[:, 0] + cc * cols[:, 1]
        for i in range(lo, m):
            H[i, i] += shift
    return np.array(eigs[::-1], dtype=np.complex128)


def spectral_radius(S, cfg: NumericConfig = DEFAULT) -> float:
    """Largest eigenvalue modulus via Hessenberg reduction and shifted QR."""
    S = as_cmatrix(S, square=True)
    if S.shape[0] > cfg.spectral_radius_max_dim:
        raise ParamOutOfRange(
            f"dimension {S.shape[0]} exceeds spectral radius cap {cfg.spectral_radius_max_dim}"
        )
    return float(np.max(np.abs(hessenberg_eigvals(S, cfg))))


@dataclass(frozen=True)
class FunctionPair:
    """Two non-negative maps on ``[0, inf)`` whose product is the identity.

    Use :meth:`power` or :meth:`sqrt` for the standard pairs; a custom pair
    is checked for ``phi(t) psi(t) = t`` on a grid over ``[0, 10]``.
    """

    phi: Callable[[np.ndarray], np.ndarray]
    psi: Callable[[np.ndarray], np.ndarray]
    kind: str = "custom"
    nu: float = field(default=float("nan"))
    tol: float = DEFAULT.pair_tol

    def __post_init__(self):
        grid = np.linspace(0.0, 10.0, 1001)
        prod = np.asarray(self.phi(grid), float) * np.asarray(self.psi(grid), float)
        err = np.max(np.abs(prod - grid))
        if not err <= self.tol:
            raise ParamOutOfRange(f"phi*psi deviates from identity by {err:.3e}")
        if np.any(np.asarray(self.phi(grid)) < 0) or np.any(np.asarray(self.psi(grid)) < 0):
            raise ParamOutOfRange("phi and psi must be non-negative")

    @classmethod
    def power(cls, nu):
        """``phi(t) = t**(1-nu)``, ``psi(t) = t**nu`` for ``nu`` in (0, 1)."""
        nu = float(nu)
        if not 0.0 < nu < 1.0:
            raise ParamOutOfRange(f"nu must lie in (0, 1), got {nu}")
        return cls(lambda t: np.power(t, 1.0 - nu), lambda t: np.power(t, nu), "power", nu)

    @classmethod
    def sqrt(cls):
        return cls(np.sqrt, np.sqrt, "sqrt", 0.5)

    def phi_sq_abs(self, T, power=1, cfg: NumericConfig = DEFAULT):
        """``phi(|T|)**(2*power)`` as a matrix."""
        return psd_fn(abs_op(T, cfg), lambda w: np.power(self.phi(w), 2 * power), cfg)

    def psi_sq_abs_adj(self, T, power=1, cfg: NumericConfig = DEFAULT):
        """``psi(|T*|)**(2*power)`` as a matrix."""
        return psd_fn(abs_op(adjoint(T), cfg), lambda w: np.power(self.psi(w), 2 * power), cfg)

    def describe(self):
        if self.kind == "custom":
            return {"kind": "custom"}
        return {"kind": self.kind, "nu": self.nu}
