import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from berezin_lab.errors import DomainMismatch, LengthMismatch, OutOfDomain, ParamOutOfRange
from berezin_lab.spaces import (
    SpaceModel,
    inner,
    kernel_norm_sq,
    kernel_tail,
    kernel_vector,
    make_grid,
    norm,
    normalized_kernel,
    orthonormal_kernels,
    required_truncation,
)

disc_points = st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0.0, 0.95), st.floats(0.0, 2 * np.pi))


def test_kernel_at_origin():
    k = kernel_vector(SpaceModel.hardy(16), 0j)
    assert k.coeffs[0] == 1 and not np.any(k.coeffs[1:])
    assert k.exact_norm_sq == 1.0
    kb = kernel_vector(SpaceModel.bergman(16), 0j)
    assert kb.coeffs[0] == 1 and not np.any(kb.coeffs[1:])


def test_kernel_norms_closed_form():
    lam = np.sqrt(0.5) * np.exp(0.3j)
    assert kernel_norm_sq(SpaceModel.hardy(8), lam) == pytest.approx(2.0)
    assert kernel_norm_sq(SpaceModel.bergman(8), lam) == pytest.approx(4.0)


def test_inner_examples():
    h = SpaceModel.hardy(8)
    f = np.zeros(8, complex)
    f[:2] = 1
    assert inner(h, f, f) == 2
    b = SpaceModel.bergman(8)
    z = np.zeros(8, complex)
    z[1] = 1
    assert inner(b, z, z) == pytest.approx(0.5)
    e0 = np.eye(8)[0]
    assert inner(h, e0, z) == 0
    with pytest.raises(LengthMismatch):
        inner(h, f, f[:4])


def test_finite_kernel():
    k = kernel_vector(SpaceModel.finite(4), 2)
    assert np.array_equal(k.coeffs, np.eye(4)[2])
    with pytest.raises(OutOfDomain):
        kernel_vector(SpaceModel.finite(4), 4)
    with pytest.raises(DomainMismatch):
        kernel_vector(SpaceModel.finite(4), 0.5j)


def test_point_validation():
    with pytest.raises(OutOfDomain):
        kernel_vector(SpaceModel.hardy(8), 1.0)
    with pytest.raises(DomainMismatch):
        kernel_vector(SpaceModel.hardy(8), "a")


@pytest.mark.parametrize("N", [8, 16, 40])
def test_normalized_hardy_kernel_self_inner(N):
    sp = SpaceModel.hardy(N)
    k = normalized_kernel(sp, 0.5)
    assert k.coeffs == pytest.approx(np.sqrt(0.75) * 0.5 ** np.arange(N))
    assert inner(sp, k.coeffs, k.coeffs).real == pytest.approx(1 - 0.25**N, abs=1e-15)


def test_bergman_normalized_at_origin():
    k = normalized_kernel(SpaceModel.bergman(8), 0j)
    assert np.array_equal(k.coeffs, np.eye(8)[0])


@given(disc_points, st.sampled_from(["hardy", "bergman"]), st.integers(8, 64))
def test_tail_bounds_truncation_error(lam, kind, N):
    sp = SpaceModel(kind, N)
    k = kernel_vector(sp, lam)
    missing = k.exact_norm_sq - norm(sp, k.coeffs) ** 2
    assert missing >= -1e-12 * k.exact_norm_sq
    assert missing <= kernel_tail(sp, lam) ** 2 * (1 + 1e-9) + 1e-12 * k.exact_norm_sq


def test_hardy_self_consistency_ratio():
    lam = 0.8
    errs = []
    for N in (16, 32):
        sp = SpaceModel.hardy(N)
        k = kernel_vector(sp, lam)
        errs.append(k.exact_norm_sq - norm(sp, k.coeffs) ** 2)
    assert errs[1] / errs[0] == pytest.approx(abs(lam) ** 32, rel=1e-6)


@pytest.mark.parametrize("kind", ["hardy", "bergman"])
def test_kernel_against_mpmath(kind):
    sp = SpaceModel(kind, 40)
    lam = 0.6 - 0.3j
    k = kernel_vector(sp, lam)
    d = sp.kernel_exponent
    with mpmath.workdps(40):
        z = mpmath.mpc(0.35, 0.2)
        series = mpmath.fsum(complex(c) * z**n for n, c in enumerate(k.coeffs))
        exact = (1 - mpmath.conj(mpmath.mpc(lam.real, lam.imag)) * z) ** (-d)
        # |conj(lam) z| < 0.3, so the dropped tail is far below the tolerance
        assert abs(complex(series) - complex(exact)) <= 1e-13


@given(disc_points, st.sampled_from(["hardy", "bergman"]))
def test_orthonormal_kernels_are_normalized_coordinates(lam, kind):
    sp = SpaceModel(kind, 48)
    col = orthonormal_kernels(sp, [lam])[:, 0]
    from berezin_lab.spaces import to_orthonormal

    assert np.allclose(col, to_orthonormal(sp, normalized_kernel(sp, lam).coeffs), atol=1e-14)


def test_make_grid():
    assert list(make_grid(SpaceModel.finite(3)).points()) == [0, 1, 2]
    g = make_grid(SpaceModel.hardy(16), 4, 4, 0.9)
    pts = g.points()
    assert len(g) == 17 and pts.size == 17 and pts[0] == 0
    assert np.max(np.abs(pts)) == pytest.approx(0.9)
    gb = make_grid(SpaceModel.bergman(16), 64, 8, 0.99)
    assert np.all(gb.radii < 1.0) and np.all(np.diff(gb.radii) > 0)
    with pytest.raises(ParamOutOfRange):
        make_grid(SpaceModel.hardy(16), 4, 4, 1.0)


def test_space_validation_and_round_trip():
    with pytest.raises(ParamOutOfRange):
        SpaceModel.hardy(4)
    with pytest.raises(ParamOutOfRange):
        SpaceModel.finite(0)
    for sp in (SpaceModel.finite(3), SpaceModel.hardy(32), SpaceModel.bergman(9)):
        assert SpaceModel.from_dict(sp.to_dict()) == sp


def test_required_truncation_is_minimal():
    sp = SpaceModel.hardy(8)
    N = required_truncation(sp, 0.9, 1e-8)
    assert 0.9 ** (N - 1) <= 1e-8 < 0.9 ** (N - 2)
