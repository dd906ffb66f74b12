# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot kernels: cyclic Jacobi and batched kernel quadratic forms."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs2(cplx z) noexcept nogil:
    return z.real * z.real + z.imag * z.imag


cdef double _off(cplx[:, ::1] A, Py_ssize_t n) noexcept nogil:
    cdef double total = 0.0
    cdef Py_ssize_t i, j
    for i in range(n):
        for j in range(n):
            if i != j:
                total += cabs2(A[i, j])
    return sqrt(total)


def jacobi_eigh(a, double tol, int max_sweeps):
    cdef cnp.ndarray[cplx, ndim=2, mode="c"] src = np.ascontiguousarray(a, dtype=np.complex128)
    cdef Py_ssize_t n = src.shape[0]
    cdef cnp.ndarray[cplx, ndim=2, mode="c"] Aarr = np.ascontiguousarray(0.5 * (src + src.conj().T))
    cdef cnp.ndarray[cplx, ndim=2, mode="c"] Varr = np.eye(n, dtype=np.complex128)
    cdef cplx[:, ::1] A = Aarr
    cdef cplx[:, ::1] V = Varr
    cdef Py_ssize_t p, q, k
    cdef double scale = 0.0, off_rel, g, app, aqq, theta, t, c, s
    cdef cplx apq, u, cu, xp, xq
    cdef int sweeps = 0

    with nogil:
        for p in range(n):
            for q in range(n):
                scale += cabs2(A[p, q])
        scale = sqrt(scale)
    if scale == 0.0 or n == 1:
        return np.real(np.diag(Aarr)).copy(), Varr, 0, 0.0

    with nogil:
        off_rel = _off(A, n) / scale
        while off_rel > tol and sweeps < max_sweeps:
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    g = sqrt(cabs2(apq))
                    if g <= 1e-20 * scale:
                        A[p, q] = 0.0
                        A[q, p] = 0.0
                        continue
                    app = A[p, p].real
                    aqq = A[q, q].real
                    theta = (aqq - app) / (2.0 * g)
                    if fabs(theta) > 1e150:
                        t = 0.5 / fabs(theta)
                    else:
                        t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    u = apq / g
                    cu = u.conjugate()
                    for k in range(n):
                        xp = A[k, p]
                        xq = A[k, q]
                        A[k, p] = c * xp - s * cu * xq
                        A[k, q] = s * xp + c * cu * xq
                    for k in range(n):
                        xp = A[p, k]
                        xq = A[q, k]
                        A[p, k] = c * xp - s * u * xq
                        A[q, k] = s * xp + c * u * xq
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    A[p, p] = A[p, p].real
                    A[q, q] = A[q, q].real
                    for k in range(n):
                        xp = V[k, p]
                        xq = V[k, q]
                        V[k, p] = c * xp - s * cu * xq
                        V[k, q] = s * xp + c * cu * xq
            sweeps += 1
            off_rel = _off(A, n) / scale

    w = np.real(np.diag(Aarr)).copy()
    order = np.argsort(w, kind="stable")
    return w[order], Varr[:, order], sweeps, off_rel


class Prepared:
    """Contiguous matrix, the nonzero column span of each row and the overall support."""

    __slots__ = ("mat", "lo", "hi", "row_lo", "row_hi", "col_lo", "col_hi")

    def __init__(self, B):
        self.mat = np.ascontiguousarray(B, dtype=np.complex128)
        N = self.mat.shape[0]
        nz = self.mat != 0
        has = nz.any(axis=1)
        self.lo = np.where(has, nz.argmax(axis=1), 0).astype(np.intp)
        self.hi = np.where(has, N - np.flip(nz, axis=1).argmax(axis=1), 0).astype(np.intp)
        rows = np.flatnonzero(has)
        if rows.size:
            self.row_lo, self.row_hi = int(rows[0]), int(rows[-1]) + 1
            self.col_lo = min(self.row_lo, int(self.lo[rows].min()))
            self.col_hi = max(self.row_hi, int(self.hi[rows].max()))
        else:
            self.row_lo = self.row_hi = self.col_lo = self.col_hi = 0


def prepare(B):
    return B if isinstance(B, Prepared) else Prepared(B)


def kernel_forms(B, lambdas, int kind):
    P = prepare(B)
    lam = np.ascontiguousarray(np.asarray(lambdas, dtype=np.complex128).ravel())
    cdef const cplx[:, ::1] Bv = P.mat
    cdef const cplx[::1] lv = lam
    cdef Py_ssize_t N = Bv.shape[0]
    cdef Py_ssize_t m = lv.shape[0]
    x_arr = lam.real**2 + lam.imag**2
    # the truncated kernel norm has a closed form
    if kind == 0:
        k_out = 1.0 - x_arr**N
    else:
        k_out = 1.0 - (N + 1.0) * x_arr**N + N * x_arr ** (N + 1)
    # only coefficients in [col_lo, col_hi) meet the operator
    cdef Py_ssize_t c0 = P.col_lo, c1 = P.col_hi, r0 = P.row_lo, r1 = P.row_hi
    pw0_arr = np.ascontiguousarray(lam.conj() ** c0)
    sq_arr = np.sqrt(np.arange(N, dtype=np.float64) + 1.0)
    t_out = np.zeros(m, dtype=np.complex128)
    n_out = np.zeros(m, dtype=np.float64)
    cdef const cplx[::1] pw0 = pw0_arr
    cdef const double[::1] xv = x_arr
    cdef const double[::1] sq = sq_arr
    cdef cplx[::1] cv = np.zeros(N, dtype=np.complex128)
    cdef cplx[::1] tv = t_out
    cdef double[::1] nv = n_out
    cdef const Py_ssize_t[::1] lo = P.lo
    cdef const Py_ssize_t[::1] hi = P.hi
    cdef Py_ssize_t j, i, l
    cdef double s, nsq
    cdef cplx lb, pw, y, acc

    with nogil:
        for j in range(m):
            lb = lv[j].conjugate()
            pw = pw0[j]
            if kind == 0:
                s = sqrt(1.0 - xv[j])
                for i in range(c0, c1):
                    cv[i] = pw * s
                    pw = pw * lb
            else:
                s = 1.0 - xv[j]
                for i in range(c0, c1):
                    cv[i] = pw * (sq[i] * s)
                    pw = pw * lb
            acc = 0.0
            nsq = 0.0
            for i in range(r0, r1):
                y = 0.0
                for l in range(lo[i], hi[i]):
                    y = y + Bv[i, l] * cv[l]
                acc = acc + cv[i].conjugate() * y
                nsq += cabs2(y)
            tv[j] = acc
            nv[j] = nsq
    return t_out, n_out, k_out
