import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berezin_lab.config import NumericConfig
from berezin_lab.errors import NoConvergence, NonHermitianInput, NotPSD, ParamOutOfRange
from berezin_lab.linalg import (
    FunctionPair,
    abs_op,
    abs_power,
    adjoint,
    as_cmatrix,
    herm_eig,
    hessenberg,
    hessenberg_eigvals,
    imag_part,
    op_norm,
    psd_fn,
    psd_power,
    real_part,
    spectral_radius,
)

from strategies import hermitian_matrices, matrices, psd_matrices

T3 = np.array([[0, 3, 1], [0, 0, 2], [0, 0, 0]], dtype=complex)


def unitary(seed, n):
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


class TestHermEig:
    def test_diagonal(self):
        w, V = herm_eig(np.diag([3.0, 1.0]))
        assert np.allclose(w, [1, 3], atol=1e-15)
        assert np.allclose(np.abs(V), [[0, 1], [1, 0]])

    def test_two_by_two(self):
        w, _ = herm_eig([[9, 3], [3, 5]])
        assert w == pytest.approx([7 - np.sqrt(13), 7 + np.sqrt(13)], abs=1e-13)

    def test_identity(self):
        w, V = herm_eig(np.eye(4))
        assert np.allclose(w, 1.0)
        assert np.allclose(V.conj().T @ V, np.eye(4), atol=1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianInput):
            herm_eig([[1, 2], [0, 1]])

    def test_stalls_with_no_sweeps(self):
        with pytest.raises(NoConvergence):
            herm_eig([[1, 1], [1, 2]], NumericConfig(jacobi_max_sweeps=0))

    @given(hermitian_matrices())
    def test_reconstruction(self, H):
        w, V = herm_eig(H)
        scale = max(np.linalg.norm(H), 1e-300)
        assert np.all(np.diff(w) >= 0)
        assert np.linalg.norm((V * w) @ V.conj().T - H) <= 1e-12 * scale
        assert np.linalg.norm(V.conj().T @ V - np.eye(len(w))) <= 1e-12

    @given(hermitian_matrices())
    def test_matches_lapack(self, H):
        w, _ = herm_eig(H)
        ref = np.linalg.eigvalsh(H)
        assert np.max(np.abs(w - ref)) <= 1e-12 * max(np.max(np.abs(ref)), 1e-300)


class TestPsdFn:
    def test_sqrt_and_square_of_diagonal(self):
        assert np.allclose(psd_fn(np.diag([4.0, 9.0]), np.sqrt), np.diag([2, 3]))
        assert np.allclose(psd_fn(np.diag([4.0, 9.0]), np.square), np.diag([16, 81]))

    def test_square_of_gram(self):
        G = np.array([[0, 0, 0], [0, 9, 3], [0, 3, 5]], dtype=float)
        out = psd_fn(G, np.square)
        assert np.allclose(out, [[0, 0, 0], [0, 90, 42], [0, 42, 34]], atol=1e-12)

    def test_clips_roundoff_negatives(self):
        out = psd_fn(np.diag([1.0, -1e-14]), np.sqrt)
        assert np.allclose(out, np.diag([1, 0]))

    def test_rejects_indefinite(self):
        with pytest.raises(NotPSD):
            psd_fn(np.diag([1.0, -0.1]), np.sqrt)

    def test_zero_power_is_identity(self):
        assert np.allclose(psd_power(np.diag([0.0, 2.0]), 0), np.eye(2))

    @given(psd_matrices(), st.floats(0.1, 3.0))
    def test_spectral_mapping(self, P, q):
        out = psd_power(P, q)
        ref = np.clip(np.linalg.eigvalsh(P), 0, None) ** q
        got = np.linalg.eigvalsh(out)
        # q < 1 amplifies round-off in near-zero eigenvalues to (eps ||P||)^q
        tol = 1e-9 * max(np.max(ref), 1.0) + (1e-13 * np.linalg.norm(P)) ** min(q, 1.0)
        assert np.max(np.abs(np.sort(got) - np.sort(ref))) <= tol

    @given(psd_matrices())
    def test_square_root_squares_back(self, P):
        R = psd_fn(P, np.sqrt)
        assert np.linalg.norm(R @ R - P) <= 1e-10 * max(np.linalg.norm(P), 1e-300)


class TestAbs:
    def test_diagonal(self):
        assert np.allclose(abs_op(np.diag([3j])), [[3]])

    def test_unitary(self):
        assert np.allclose(abs_op(unitary(1, 4)), np.eye(4), atol=1e-13)

    def test_square_is_gram(self):
        A = abs_op(T3)
        assert np.allclose(A @ A, [[0, 0, 0], [0, 9, 3], [0, 3, 5]], atol=1e-12)

    @given(matrices(), st.sampled_from([1.0, 2.0, 3.0, 4.0, 0.5]))
    def test_abs_power_matches_powered_abs(self, T, q):
        a = abs_power(T, q)
        b = psd_power(abs_op(T), q)
        assert np.linalg.norm(a - b) <= 1e-9 * max(np.linalg.norm(T) ** q, 1e-300)


class TestNorms:
    def test_examples(self):
        assert op_norm(np.eye(3)) == pytest.approx(1.0)
        assert op_norm(T3) == pytest.approx(np.sqrt(7 + np.sqrt(13)), abs=1e-13)
        c = 2.5 - 1.5j
        assert op_norm(c * unitary(3, 5)) == pytest.approx(abs(c), abs=1e-13)

    @given(matrices())
    def test_norm_invariants(self, T):
        n = op_norm(T)
        tol = 1e-10 * max(n, 1e-300)
        assert n == pytest.approx(np.linalg.norm(T, 2), abs=tol)
        assert abs(op_norm(adjoint(T)) - n) <= tol
        assert abs(op_norm(abs_op(T)) - n) <= tol

    @given(matrices())
    def test_radius_below_norm(self, T):
        assert spectral_radius(T) <= op_norm(T) * (1 + 1e-10)


class TestSpectralRadius:
    def test_examples(self):
        assert spectral_radius([[0, 1], [0, 0]]) == 0.0
        assert spectral_radius([[0, 1], [2, 0]]) == pytest.approx(np.sqrt(2), abs=1e-14)
        assert spectral_radius(np.diag([1, -3, 2j])) == pytest.approx(3.0, abs=1e-14)

    def test_dimension_cap(self):
        with pytest.raises(ParamOutOfRange):
            spectral_radius(np.eye(65))

    @given(matrices(max_n=8))
    def test_eigenvalues_match_lapack(self, A):
        got = np.sort_complex(hessenberg_eigvals(A))
        ref = np.linalg.eigvals(A)
        # match each reference eigenvalue to its closest computed one
        d = np.abs(ref[:, None] - got[None, :]).min(axis=1)
        assert np.max(d) <= 1e-7 * max(np.linalg.norm(A), 1e-300)

    @given(matrices(min_n=3, max_n=7))
    def test_hessenberg_form(self, A):
        H = hessenberg(A)
        assert np.allclose(np.tril(H, -2), 0)
        assert np.trace(H) == pytest.approx(np.trace(A), abs=1e-10 * max(np.linalg.norm(A), 1.0))


class TestParts:
    def test_examples(self):
        assert np.allclose(real_part([[0, 2], [0, 0]]), [[0, 1], [1, 0]])
        H = np.array([[1, 2 - 1j], [2 + 1j, -3]])
        assert np.allclose(imag_part(H), 0)
        assert np.allclose(real_part(1j * H), 0)

    @given(matrices())
    def test_decomposition(self, T):
        R, I = real_part(T), imag_part(T)
        assert np.allclose(R + 1j * I, T)
        assert np.allclose(R, adjoint(R)) and np.allclose(I, adjoint(I))


class TestFunctionPair:
    def test_power_pair(self):
        p = FunctionPair.power(0.25)
        t = np.linspace(0, 5, 11)
        assert np.allclose(p.phi(t) * p.psi(t), t)

    def test_rejects_bad_pair(self):
        FunctionPair(np.sqrt, np.sqrt)
        with pytest.raises(ParamOutOfRange):
            FunctionPair(lambda t: t, lambda t: t)

    def test_rejects_nu_outside(self):
        with pytest.raises(ParamOutOfRange):
            FunctionPair.power(1.0)

    def test_sqrt_pair_on_operator(self):
        T = np.array([[1, 2], [0, 1]], dtype=complex)
        pair = FunctionPair.sqrt()
        assert np.allclose(pair.phi_sq_abs(T), abs_op(T), atol=1e-12)
        assert np.allclose(pair.psi_sq_abs_adj(T), abs_op(adjoint(T)), atol=1e-12)


def test_as_cmatrix_copies_and_validates():
    a = np.eye(2)
    m = as_cmatrix(a)
    m[0, 0] = 5
    assert a[0, 0] == 1
    with pytest.raises(ParamOutOfRange):
        as_cmatrix([[np.nan]])
    with pytest.raises(ParamOutOfRange):
        as_cmatrix(np.ones((2, 3)), square=True)
