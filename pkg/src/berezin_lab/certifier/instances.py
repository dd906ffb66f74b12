"""Constructive random instances for the claim catalog.

Every generator builds its object so the hypothesis holds by construction and
then checks the hypothesis residual; a residual above ``RESIDUAL_TOL`` (relative)
is retried, and :class:`GenerationFailure` is raised when the budget runs out.
"""
from dataclasses import dataclass, field

import numpy as np

from ..config import DEFAULT
from ..errors import GenerationFailure, ParamOutOfRange
from ..linalg import abs_op, adjoint, herm_eig, psd_fn

RESIDUAL_TOL = 1e-12
RETRIES = 20


def rng_for(seed, claim_index, trial):
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(claim_index), int(trial)]))


@dataclass
class Instance:
    """Operators and scalars of one trial, plus how to regenerate it."""

    claim: str
    seed: int
    trial: int
    operators: dict = field(default_factory=dict)
    scalars: dict = field(default_factory=dict)

    def to_dict(self):
        ops = {}
        for k, v in self.operators.items():
            if isinstance(v, np.ndarray):
                ops[k] = [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(v)]
            else:
                ops[k] = repr(v)
        sc = {}
        for k, v in self.scalars.items():
            if isinstance(v, complex):
                sc[k] = [v.real, v.imag]
            elif isinstance(v, np.ndarray):
                sc[k] = v.tolist()
            else:
                sc[k] = v
        return {"claim": self.claim, "seed": self.seed, "trial": self.trial, "operators": ops, "scalars": sc}


def check_dim(n):
    if not 2 <= int(n) <= 8:
        raise ParamOutOfRange(f"matrix dimension must lie in [2, 8], got {n}")
    return int(n)


def gaussian(rng, n, m=None):
    m = n if m is None else m
    return (rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))) / np.sqrt(2.0)


def unit_vector(rng, n):
    v = gaussian(rng, n, 1).ravel()
    return v / np.linalg.norm(v)


def unitary(rng, n):
    Q, R = np.linalg.qr(gaussian(rng, n))
    d = np.diagonal(R)
    return Q * (d / np.abs(d))[None, :]


def _rel(res, scale):
    return res / max(scale, 1.0)


def normal_matrix(rng, n):
    U = unitary(rng, n)
    z = gaussian(rng, n, 1).ravel()
    T = (U * z[None, :]) @ adjoint(U)
    res = np.linalg.norm(T @ adjoint(T) - adjoint(T) @ T)
    if _rel(res, np.linalg.norm(T) ** 2) > RESIDUAL_TOL:
        raise GenerationFailure("normal generator residual too large")
    return T


def psd_matrix(rng, n, rank=None):
    k = n if rank is None else rank
    G = gaussian(rng, k, n)
    H = adjoint(G) @ G
    return 0.5 * (H + adjoint(H))


def hermitian(rng, n):
    G = gaussian(rng, n)
    return 0.5 * (G + adjoint(G))


def square_zero(rng, n):
    """Strictly block upper form ``[[0, B], [0, 0]]``, so ``T^2 = 0`` exactly."""
    k = int(rng.integers(1, n))
    T = np.zeros((n, n), dtype=np.complex128)
    T[:k, k:] = gaussian(rng, k, n - k)
    return T


def alpha_beta(T, cfg=DEFAULT):
    """Best constants in ``a T*T <= TT* <= b T*T`` for invertible ``T``."""
    G = adjoint(T) @ T
    H = T @ adjoint(T)
    Gm = psd_fn(G, lambda w: np.where(w > 0, 1.0 / np.sqrt(np.where(w > 0, w, 1.0)), 0.0), cfg)
    w, _ = herm_eig(Gm @ H @ Gm, cfg)
    return float(w[0]), float(w[-1])


def alpha_beta_normal(rng, n, cfg=DEFAULT):
    """``T = V (P D) V*`` with ``P`` a permutation and ``D`` positive diagonal.

    ``T*T`` and ``TT*`` are diagonal in the ``V`` basis, so the constants are
    the extreme ratios of their diagonals.
    """
    for _ in range(RETRIES):
        V = unitary(rng, n)
        d = rng.uniform(0.3, 2.0, n)
        perm = rng.permutation(n)
        PD = np.zeros((n, n), dtype=np.complex128)
        PD[perm, np.arange(n)] = d
        T = V @ PD @ adjoint(V)
        ratios = (d[np.argsort(perm)] ** 2) / d**2  # (PD^2P*)_ii / (D^2)_ii
        a, b = float(np.min(ratios)), float(np.max(ratios))
        G = adjoint(T) @ T
        H = T @ adjoint(T)
        lo = np.linalg.eigvalsh(H - a * G)[0]
        hi = np.linalg.eigvalsh(b * G - H)[0]
        scale = np.linalg.norm(G)
        if min(lo, hi) >= -RESIDUAL_TOL * max(scale, 1.0):
            return T, a, b
    raise GenerationFailure("could not build an (alpha, beta)-normal instance")


def commuting_pair(rng, n, cfg=DEFAULT):
    """``(T, S, kind)`` with ``|T| S = S* |T|``.

    ``T = U P`` with ``P`` positive definite, so ``|T| = P``. ``S`` is either a
    real polynomial in ``P`` (kind ``"poly"``, commuting with ``|T|``) or
    ``P^-1 H`` with ``H`` Hermitian (kind ``"quotient"``); both make ``P S``
    Hermitian, the second without ``S`` being normal.
    """
    for _ in range(RETRIES):
        U = unitary(rng, n)
        V = unitary(rng, n)
        w = rng.uniform(0.5, 2.0, n)
        P = (V * w[None, :]) @ adjoint(V)
        P = 0.5 * (P + adjoint(P))
        T = U @ P
        if rng.random() < 0.5:
            kind = "poly"
            c = rng.uniform(-1.0, 1.0, 3)
            S = c[0] * np.eye(n) + c[1] * P + c[2] * P @ P
        else:
            kind = "quotient"
            Pinv = (V * (1.0 / w)[None, :]) @ adjoint(V)
            S = Pinv @ hermitian(rng, n)
        A = abs_op(T, cfg)
        res = np.linalg.norm(A @ S - adjoint(S) @ A)
        if _rel(res, np.linalg.norm(A) * np.linalg.norm(S)) <= RESIDUAL_TOL:
            return T, S, kind
    raise GenerationFailure("could not build a pair with |T|S = S*|T|")


def hardy_weights(rng, N, nondecreasing=True, low=0.5, high=1.5):
    w = rng.uniform(low, high, N)
    return np.sort(w) if nondecreasing else w
