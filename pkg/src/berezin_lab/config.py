"""Centralized numeric tolerances."""
from dataclasses import dataclass


@dataclass(frozen=True)
class NumericConfig:
    """Tolerances and iteration budgets, passed explicitly to numeric routines.

    Attributes
    ----------
    herm_tol : float
        Relative asymmetry ``||H - H*|| / ||H||`` accepted as Hermitian.
    clip_tol : float
        Relative size of negative eigenvalues clipped to zero before a
        spectral function is applied.
    jacobi_tol : float
        Relative off-diagonal Frobenius norm at which Jacobi sweeps stop.
    jacobi_max_sweeps : int
        Sweep budget of the cyclic Jacobi eigensolver.
    qr_iters_per_eig : int
        Shifted-QR iteration budget per eigenvalue.
    spectral_radius_max_dim : int
        Largest matrix accepted by ``spectral_radius``.
    pair_tol : float
        Tolerance of the ``phi(t) psi(t) = t`` check on custom function pairs.
    """

    herm_tol: float = 1e-12
    clip_tol: float = 1e-10
    jacobi_tol: float = 1e-15
    jacobi_max_sweeps: int = 100
    qr_iters_per_eig: int = 60
    spectral_radius_max_dim: int = 64
    pair_tol: float = 1e-12


DEFAULT = NumericConfig()
