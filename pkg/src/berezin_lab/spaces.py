"""Reproducing kernel space models.

``Finite(n)`` is C^n with the standard basis as kernel, so parameter points are
indices. ``Hardy(N)`` and ``Bergman(N)`` are the disc spaces truncated to the
first ``N`` monomials; parameter points are complex numbers with ``|lam| < 1``.

Disc vectors are stored by monomial coefficients. The Bergman inner product
weights coefficient ``n`` by ``1/(n+1)``; the orthonormal coordinates used by
the numerical kernels are ``c_n * sqrt(w_n)``.
"""
from dataclasses import dataclass
from enum import Enum
from numbers import Integral, Number

import numpy as np

from .errors import DomainMismatch, LengthMismatch, OutOfDomain, ParamOutOfRange

MIN_TRUNCATION = 8


class SpaceKind(Enum):
    FINITE = "finite"
    HARDY = "hardy"
    BERGMAN = "bergman"


@dataclass(frozen=True)
class SpaceModel:
    kind: SpaceKind
    size: int

    def __post_init__(self):
        object.__setattr__(self, "kind", SpaceKind(self.kind))
        if isinstance(self.size, bool) or not isinstance(self.size, Integral):
            raise ParamOutOfRange(f"space size must be an integer, got {self.size!r}")
        object.__setattr__(self, "size", int(self.size))
        if self.kind is SpaceKind.FINITE and self.size < 1:
            raise ParamOutOfRange(f"finite dimension must be >= 1, got {self.size}")
        if self.kind is not SpaceKind.FINITE and self.size < MIN_TRUNCATION:
            raise ParamOutOfRange(f"truncation must be >= {MIN_TRUNCATION}, got {self.size}")

    @classmethod
    def finite(cls, n):
        return cls(SpaceKind.FINITE, n)

    @classmethod
    def hardy(cls, N=64):
        return cls(SpaceKind.HARDY, N)

    @classmethod
    def bergman(cls, N=64):
        return cls(SpaceKind.BERGMAN, N)

    @property
    def is_disc(self):
        return self.kind is not SpaceKind.FINITE

    @property
    def kernel_exponent(self):
        """``d`` in ``k_lam(z) = (1 - conj(lam) z)^(-d)``; 0 for finite spaces."""
        return {SpaceKind.FINITE: 0, SpaceKind.HARDY: 1, SpaceKind.BERGMAN: 2}[self.kind]

    def weights(self):
        """Inner-product weights on stored coefficients."""
        if self.kind is SpaceKind.BERGMAN:
            return 1.0 / np.arange(1.0, self.size + 1.0)
        return np.ones(self.size)

    def to_dict(self):
        key = "dim" if self.kind is SpaceKind.FINITE else "truncation"
        return {"kind": self.kind.value, key: self.size}

    @classmethod
    def from_dict(cls, d):
        try:
            kind = SpaceKind(d["kind"])
            size = d["dim"] if kind is SpaceKind.FINITE else d.get("truncation", 64)
        except (KeyError, ValueError, TypeError) as exc:
            raise ParamOutOfRange(f"invalid space spec {d!r}: {exc}") from None
        return cls(kind, size)

    def __str__(self):
        return f"{self.kind.value}:{self.size}"


def check_point(space: SpaceModel, p):
    """Validate a parameter point and return it as ``int`` or ``complex``."""
    if not space.is_disc:
        if isinstance(p, bool) or not isinstance(p, Integral):
            raise DomainMismatch(f"finite space expects an index, got {p!r}")
        if not 0 <= int(p) < space.size:
            raise OutOfDomain(f"index {p} outside 0..{space.size - 1}")
        return int(p)
    if not isinstance(p, Number) or isinstance(p, bool):
        raise DomainMismatch(f"disc space expects a complex point, got {p!r}")
    lam = complex(p)
    if not np.isfinite(lam.real) or not np.isfinite(lam.imag) or abs(lam) >= 1.0:
        raise OutOfDomain(f"point {lam} is not in the open unit disc")
    return lam


@dataclass(frozen=True)
class KernelVector:
    coeffs: np.ndarray
    exact_norm_sq: float
    tail_bound: float


def kernel_norm_sq(space: SpaceModel, lam):
    """``||k_lam||^2`` in closed form."""
    if not space.is_disc:
        return 1.0
    x = abs(lam) ** 2
    return (1.0 - x) ** (-space.kernel_exponent)


def kernel_tail(space: SpaceModel, lam, start=None):
    """Bound on the norm of the kernel coefficients from index ``start`` on.

    ``start`` defaults to the truncation length, giving the truncation error.
    Hardy: ``r^(2N)/(1-r^2)``; Bergman: ``(N+1) r^(2N)/(1-r^2)^2`` (squared).
    """
    if not space.is_disc:
        return 0.0
    N = space.size if start is None else start
    x = abs(lam) ** 2
    if space.kind is SpaceKind.HARDY:
        return float(np.sqrt(x**N / (1.0 - x)))
    return float(np.sqrt((N + 1) * x**N) / (1.0 - x))


def normalized_tail(space: SpaceModel, r, start=None):
    """:func:`kernel_tail` for the normalized kernel; vectorized over ``r``."""
    if not space.is_disc:
        return np.zeros_like(np.asarray(r, dtype=float))
    N = space.size if start is None else start
    r = np.abs(np.asarray(r, dtype=float))
    if space.kind is SpaceKind.HARDY:
        return r**N
    return np.sqrt(N + 1.0) * r**N


def required_truncation(space: SpaceModel, r, tol, offset=1):
    """Smallest truncation ``N`` with ``normalized_tail(r, N - offset) <= tol``."""
    if not space.is_disc:
        return space.size
    if not 0.0 <= r < 1.0 or tol <= 0:
        raise ParamOutOfRange("need 0 <= r < 1 and tol > 0")
    probe = SpaceModel(space.kind, MIN_TRUNCATION)
    N = MIN_TRUNCATION
    while normalized_tail(probe, r, N - offset) > tol:
        N = int(N * 1.25) + 1
    lo = max(MIN_TRUNCATION, int(N / 1.25) - 1)
    for n in range(lo, N + 1):
        if normalized_tail(probe, r, n - offset) <= tol:
            return n
    return N


def kernel_vector(space: SpaceModel, p) -> KernelVector:
    p = check_point(space, p)
    if not space.is_disc:
        e = np.zeros(space.size, dtype=np.complex128)
        e[p] = 1.0
        return KernelVector(e, 1.0, 0.0)
    n = np.arange(space.size)
    coeffs = _powers(np.conj(p), space.size)
    if space.kind is SpaceKind.BERGMAN:
        coeffs = coeffs * (n + 1.0)
    return KernelVector(coeffs, kernel_norm_sq(space, p), kernel_tail(space, p))


def normalized_kernel(space: SpaceModel, p) -> KernelVector:
    k = kernel_vector(space, p)
    s = np.sqrt(k.exact_norm_sq)
    return KernelVector(k.coeffs / s, 1.0, k.tail_bound / s)


def _powers(z, N):
    out = np.empty(N, dtype=np.complex128)
    out[0] = 1.0
    if N > 1:
        out[1:] = z
        out = np.cumprod(out)
    return out


def inner(space: SpaceModel, f, g):
    f = np.asarray(f, dtype=np.complex128)
    g = np.asarray(g, dtype=np.complex128)
    if f.shape != (space.size,) or g.shape != (space.size,):
        raise LengthMismatch(f"expected length {space.size}, got {f.shape} and {g.shape}")
    return complex(np.sum(space.weights() * f * np.conj(g)))


def norm(space: SpaceModel, f):
    return float(np.sqrt(max(inner(space, f, f).real, 0.0)))


def to_orthonormal(space: SpaceModel, coeffs):
    return np.asarray(coeffs, dtype=np.complex128) * np.sqrt(space.weights())


def from_orthonormal(space: SpaceModel, coords):
    return np.asarray(coords, dtype=np.complex128) / np.sqrt(space.weights())


def orthonormal_kernels(space: SpaceModel, lambdas):
    """Normalized kernels in orthonormal coordinates, one column per point."""
    lam = np.asarray(lambdas, dtype=np.complex128).ravel()
    if not space.is_disc:
        raise DomainMismatch("orthonormal_kernels is defined for disc spaces")
    N = space.size
    base = np.broadcast_to(np.conj(lam)[None, :], (N, lam.size)).copy()
    base[0, :] = 1.0
    K = np.cumprod(base, axis=0)
    x = np.abs(lam) ** 2
    if space.kind is SpaceKind.HARDY:
        return K * np.sqrt(1.0 - x)
    return K * np.sqrt(np.arange(1.0, N + 1.0))[:, None] * (1.0 - x)


@dataclass(frozen=True)
class DiscGrid:
    """Polar grid on the closed disc of radius ``rmax``, plus the centre.

    Radii ``rmax * sin(pi j / (2R))`` for ``j = 1..R`` cluster toward ``rmax``.
    Point order: centre, then radius-major with angles ``2 pi k / A``.
    For finite spaces the grid is the index set and the polar fields are empty.
    """

    space: SpaceModel
    radii: np.ndarray
    angle_count: int
    rmax: float

    @property
    def angles(self):
        return 2.0 * np.pi * np.arange(self.angle_count) / self.angle_count

    def points(self):
        if not self.space.is_disc:
            return np.arange(self.space.size)
        ring = self.radii[:, None] * np.exp(1j * self.angles)[None, :]
        return np.concatenate([[0j], ring.ravel()])

    def __len__(self):
        if not self.space.is_disc:
            return self.space.size
        return 1 + self.radii.size * self.angle_count

    def to_dict(self):
        return {"radial": int(self.radii.size), "angular": int(self.angle_count), "rmax": self.rmax}


def make_grid(space: SpaceModel, radial_count=48, angular_count=64, rmax=0.995) -> DiscGrid:
    if not space.is_disc:
        return DiscGrid(space, np.zeros(0), 0, 0.0)
    if int(radial_count) < 2 or int(angular_count) < 2:
        raise ParamOutOfRange("grid counts must be >= 2")
    rmax = float(rmax)
    if not 0.0 < rmax < 1.0:
        raise ParamOutOfRange(f"rmax must lie in (0, 1), got {rmax}")
    R = int(radial_count)
    radii = rmax * np.sin(np.pi * np.arange(1, R + 1) / (2 * R))
    radii[-1] = rmax
    return DiscGrid(space, radii, int(angular_count), rmax)
