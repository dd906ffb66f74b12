"""Pure numpy implementations of the hot kernels.

Same signatures and semantics as the compiled ``_kernels`` module; selected by
``_backend`` when the extension is missing or ``BEREZIN_LAB_PURE_PYTHON`` is set.
"""
import numpy as np
from scipy import sparse

HARDY = 0
BERGMAN = 1
_CHUNK = 1 << 21  # kernel entries per block


def jacobi_eigh(a, tol, max_sweeps):
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Returns ``(w, V, sweeps, off_rel)`` with ``w`` ascending, ``V`` unitary,
    the number of sweeps performed and the final relative off-diagonal norm.
    Only the Hermitian part of ``a`` is used.
    """
    A = np.array(a, dtype=np.complex128, copy=True)
    n = A.shape[0]
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=np.complex128)
    scale = np.sqrt(np.sum(A.real**2 + A.imag**2))
    if scale == 0.0 or n == 1:
        return np.real(np.diag(A)).copy(), V, 0, 0.0

    sweeps = 0
    off_rel = _off(A) / scale
    while off_rel > tol and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                g = abs(apq)
                if g <= 1e-20 * scale:
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    continue
                app = A[p, p].real
                aqq = A[q, q].real
                theta = (aqq - app) / (2.0 * g)
                if abs(theta) > 1e150:
                    t = 0.5 / abs(theta)
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                u = apq / g
                cu = u.conjugate()

                col_p = A[:, p].copy()
                col_q = A[:, q]
                A[:, p] = c * col_p - s * cu * col_q
                A[:, q] = s * col_p + c * cu * col_q
                row_p = A[p, :].copy()
                row_q = A[q, :]
                A[p, :] = c * row_p - s * u * row_q
                A[q, :] = s * row_p + c * u * row_q
                A[p, q] = 0.0
                A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real

                vp = V[:, p].copy()
                vq = V[:, q]
                V[:, p] = c * vp - s * cu * vq
                V[:, q] = s * vp + c * cu * vq
        sweeps += 1
        off_rel = _off(A) / scale

    w = np.real(np.diag(A)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order], sweeps, off_rel


def _off(A):
    sq = A.real**2 + A.imag**2
    np.fill_diagonal(sq, 0.0)
    return np.sqrt(np.sum(sq))


def prepare(B):
    """Sparse storage for mostly-zero matrices (shifts, rank-one maps), dense otherwise."""
    if sparse.issparse(B):
        return B
    B = np.asarray(B, dtype=np.complex128)
    if B.shape[0] >= 64 and np.count_nonzero(B) < 0.05 * B.size:
        return sparse.csr_matrix(B)
    return B


def kernel_forms(B, lambdas, kind):
    """Quadratic forms of ``B`` at normalized disc kernels.

    ``B`` acts on orthonormal-basis coefficients (``z^n`` for Hardy,
    ``sqrt(n+1) z^n`` for Bergman). For each ``lam`` the truncated normalized
    kernel ``c`` is built and ``(<Bc, c>, ||Bc||^2, ||c||^2)`` returned.
    """
    B = prepare(B)
    lam = np.asarray(lambdas, dtype=np.complex128).ravel()
    N = B.shape[0]
    t = np.empty(lam.size, dtype=np.complex128)
    nsq = np.empty(lam.size)
    ksq = np.empty(lam.size)
    step = max(1, _CHUNK // N)
    for s in range(0, lam.size, step):
        K = _kernel_columns(N, lam[s:s + step], kind)
        Y = B @ K
        t[s:s + step] = np.sum(K.conj() * Y, axis=0)
        nsq[s:s + step] = np.sum(Y.real**2 + Y.imag**2, axis=0)
        ksq[s:s + step] = np.sum(K.real**2 + K.imag**2, axis=0)
    return t, nsq, ksq


def _kernel_columns(N, lam, kind):
    n = np.arange(N)[:, None]
    x = (lam.real**2 + lam.imag**2)[None, :]
    # powers via cumulative product keep 0**0 == 1 and avoid log of zero
    base = np.broadcast_to(lam.conj()[None, :], (N, lam.size)).copy()
    base[0, :] = 1.0
    K = np.cumprod(base, axis=0)
    if kind == HARDY:
        K *= np.sqrt(1.0 - x)
    else:
        K *= np.sqrt(n + 1.0) * (1.0 - x)
    return K
