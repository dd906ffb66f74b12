"""Operator models on the space models.

``MatrixOp`` is a dense matrix on ``Finite(n)``. ``CoeffMapOp`` acts on the
monomial coefficients of a truncated Hardy/Bergman space. ``SymbolTransformOp``
carries only a closed-form Berezin transform (composition symbols
``phi(z) = zeta |z|^k z`` and geometric shifts); it has no vector action.
"""
from dataclasses import dataclass
from functools import cached_property
from numbers import Number

import numpy as np

from . import _backend
from .errors import DomainMismatch, OutOfDomain, ParamOutOfRange, UnsupportedModel
from .linalg import adjoint, as_cmatrix
from .spaces import SpaceKind, SpaceModel

_SERIES_EPS = 1e-18


def _frozen(a):
    a = np.array(a, dtype=np.complex128, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class MatrixOp:
    space: SpaceModel
    mat: np.ndarray

    def __post_init__(self):
        if self.space.is_disc:
            raise DomainMismatch("MatrixOp lives on a finite space")
        m = as_cmatrix(self.mat, square=True)
        if m.shape[0] != self.space.size:
            raise DomainMismatch(f"matrix is {m.shape[0]}x{m.shape[0]}, space has dimension {self.space.size}")
        object.__setattr__(self, "mat", _frozen(m))

    @property
    def label(self):
        return "matrix"

    @property
    def boundary_limit(self):
        return None

    def orthonormal(self):
        return self.mat

    @cached_property
    def norm_estimate(self):
        return _schur_bound(self.mat)


@dataclass(frozen=True, eq=False)
class CoeffMapOp:
    """Matrix acting on monomial coefficients of a truncated disc space.

    ``boundary_limit`` is the modulus of the transform as ``|lam| -> 1`` when
    it is known in closed form; ``c_tilde`` uses it as an extra candidate.
    ``exact`` marks operators that vanish off the first ``N`` coefficients and
    map into them, so truncation loses nothing.
    """

    space: SpaceModel
    mat: np.ndarray
    weight_bound: float = float("nan")
    label: str = "coeff"
    boundary_limit: float = None
    exact: bool = False

    def __post_init__(self):
        if not self.space.is_disc:
            raise DomainMismatch("CoeffMapOp lives on a Hardy or Bergman space")
        m = as_cmatrix(self.mat, square=True)
        if m.shape[0] != self.space.size:
            raise DomainMismatch(f"matrix is {m.shape[0]}x{m.shape[0]}, truncation is {self.space.size}")
        object.__setattr__(self, "mat", _frozen(m))

    def orthonormal(self):
        """The matrix in orthonormal coordinates, ``W^(1/2) M W^(-1/2)``."""
        return self._ortho

    @cached_property
    def _ortho(self):
        if self.space.kind is SpaceKind.HARDY:
            return self.mat
        s = np.sqrt(self.space.weights())
        return _frozen(s[:, None] * self.mat / s[None, :])

    @cached_property
    def kernel_operand(self):
        """:meth:`orthonormal` in the form the kernel backend consumes."""
        return _backend.prepare(self._ortho)

    @cached_property
    def norm_estimate(self):
        """Upper bound on the operator norm (Schur test in orthonormal coordinates)."""
        return _schur_bound(self.orthonormal())


@dataclass(frozen=True)
class CompositionSymbol:
    zeta: complex
    k: int = 0

    def __post_init__(self):
        z = complex(self.zeta)
        if not np.isfinite(z.real) or not np.isfinite(z.imag) or abs(z) > 1.0 + 1e-15:
            raise ParamOutOfRange(f"zeta must lie in the closed unit disc, got {z}")
        if isinstance(self.k, bool) or int(self.k) != self.k or self.k < 0:
            raise ParamOutOfRange(f"k must be a non-negative integer, got {self.k!r}")
        object.__setattr__(self, "zeta", z)
        object.__setattr__(self, "k", int(self.k))


@dataclass(frozen=True)
class GeomShiftSymbol:
    beta: complex

    def __post_init__(self):
        b = complex(self.beta)
        if not abs(b) < 1.0:
            raise ParamOutOfRange(f"beta must lie in the open unit disc, got {b}")
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class SymbolTransformOp:
    space: SpaceModel
    symbol: object

    def __post_init__(self):
        if not self.space.is_disc:
            raise DomainMismatch("symbol operators live on Hardy or Bergman spaces")
        if not isinstance(self.symbol, (CompositionSymbol, GeomShiftSymbol)):
            raise ParamOutOfRange(f"unknown symbol {self.symbol!r}")

    @property
    def label(self):
        return "comp" if isinstance(self.symbol, CompositionSymbol) else "geom_shift"

    @property
    def boundary_limit(self):
        if isinstance(self.symbol, CompositionSymbol):
            return composition_boundary_limit(self.symbol, self.space)
        return 0.0


def _schur_bound(B):
    a = np.abs(B)
    return float(np.sqrt(np.max(np.sum(a, axis=0)) * np.max(np.sum(a, axis=1))))


def matrix_op(mat):
    m = as_cmatrix(mat, square=True)
    return MatrixOp(SpaceModel.finite(m.shape[0]), m)


def from_orthonormal(space: SpaceModel, B, label="coeff", boundary_limit=None):
    """Build a :class:`CoeffMapOp` from its matrix in orthonormal coordinates."""
    B = as_cmatrix(B, square=True)
    if not space.is_disc:
        return MatrixOp(space, B)
    s = np.sqrt(space.weights())
    M = B * s[None, :] / s[:, None]
    return CoeffMapOp(space, M, float(_schur_bound(B)), label, boundary_limit)


def weighted_shift(space: SpaceModel, weights, weight_bound=None, label="shift", boundary_limit=None):
    """Weighted forward shift; ``weights[j]`` multiplies ``z^j`` on its way to ``z^(j+1)``.

    Bergman follows the definition on the orthonormal basis ``sqrt(n+1) z^n``,
    so monomial coefficient ``c_j`` lands at ``j+1`` as ``weights[j] c_j / sqrt(j+1)``.
    """
    if not space.is_disc:
        raise DomainMismatch("weighted shifts are defined on Hardy or Bergman spaces")
    w = np.asarray(weights, dtype=np.complex128).ravel()
    N = space.size
    if w.size < N:
        raise ParamOutOfRange(f"need at least {N} weights, got {w.size}")
    if not np.all(np.isfinite(w)):
        raise ParamOutOfRange("weights must be finite")
    M = float(np.max(np.abs(w)))
    if weight_bound is not None:
        if not weight_bound >= M:
            raise ParamOutOfRange(f"weight_bound {weight_bound} is below sup |weights| = {M}")
        M = float(weight_bound)
    mat = np.zeros((N, N), dtype=np.complex128)
    j = np.arange(N - 1)
    if space.kind is SpaceKind.HARDY:
        mat[j + 1, j] = w[: N - 1]
    else:
        mat[j + 1, j] = w[: N - 1] / np.sqrt(j + 1.0)
        if boundary_limit is None:
            boundary_limit = 0.0
    return CoeffMapOp(space, mat, M, label, boundary_limit)


def geometric_weights(beta, count):
    out = np.empty(count, dtype=np.complex128)
    out[0] = 1.0
    if count > 1:
        out[1:] = beta
        out = np.cumprod(out)
    return out


def geometric_shift(space: SpaceModel, beta):
    """Shift with weights ``1, beta, beta^2, ...``; the transform vanishes at the boundary."""
    GeomShiftSymbol(beta)
    return weighted_shift(space, geometric_weights(complex(beta), space.size), label="geom_shift", boundary_limit=0.0)


def constant_shift(space: SpaceModel, c):
    limit = abs(c) if space.kind is SpaceKind.HARDY else 0.0
    return weighted_shift(space, np.full(space.size, complex(c)), label="const_shift", boundary_limit=limit)


def rank_one_z(space: SpaceModel):
    """``f -> <f, z> z`` on the Hardy space."""
    if space.kind is not SpaceKind.HARDY:
        raise DomainMismatch("rank_one_z is defined on the Hardy space")
    mat = np.zeros((space.size, space.size), dtype=np.complex128)
    mat[1, 1] = 1.0
    return CoeffMapOp(space, mat, 1.0, "rank_one_z", 0.0, exact=True)


def composition_operator(space: SpaceModel, zeta, k=0):
    """Exact coefficient realization of ``f -> f(zeta z)``; only ``k = 0`` is linear-holomorphic."""
    sym = CompositionSymbol(zeta, k)
    if sym.k != 0:
        raise UnsupportedModel("zeta |z|^k z with k > 0 has no coefficient-map realization")
    d = np.ones(space.size, dtype=np.complex128)
    d[1:] = sym.zeta
    d = np.cumprod(d)
    return CoeffMapOp(space, np.diag(d), 1.0, "comp", composition_boundary_limit(sym, space))


def realize(op):
    """An operator with a vector action, or :class:`UnsupportedModel`."""
    if isinstance(op, (MatrixOp, CoeffMapOp)):
        return op
    if isinstance(op.symbol, CompositionSymbol):
        return composition_operator(op.space, op.symbol.zeta, op.symbol.k)
    return geometric_shift(op.space, op.symbol.beta)


def apply(op, f):
    if isinstance(op, SymbolTransformOp):
        raise UnsupportedModel("symbol operators have no vector action")
    f = np.asarray(f, dtype=np.complex128)
    if f.shape != (op.space.size,):
        raise DomainMismatch(f"vector length {f.shape} does not match space size {op.space.size}")
    return op.mat @ f


def adjoint_of(op):
    if isinstance(op, SymbolTransformOp):
        raise UnsupportedModel("adjoint of a symbol operator is not modelled")
    if isinstance(op, MatrixOp):
        return MatrixOp(op.space, adjoint(op.mat))
    if op.space.kind is SpaceKind.HARDY:
        m = adjoint(op.mat)
    else:
        w = op.space.weights()
        m = adjoint(op.mat) * w[None, :] / w[:, None]
    label = op.label[:-1] if op.label.endswith("*") else op.label + "*"
    return CoeffMapOp(op.space, m, op.weight_bound, label, op.boundary_limit, op.exact)


def scaled(op, c):
    """``c * op`` with metadata carried over."""
    c = complex(c)
    if isinstance(op, MatrixOp):
        return MatrixOp(op.space, c * op.mat)
    if isinstance(op, CoeffMapOp):
        lim = None if op.boundary_limit is None else abs(c) * op.boundary_limit
        return CoeffMapOp(op.space, c * op.mat, abs(c) * op.weight_bound, op.label, lim, op.exact)
    raise UnsupportedModel("scaling of symbol operators is not modelled")


def _disc_radius(lam):
    lam = np.asarray(lam, dtype=np.complex128)
    r = np.abs(lam)
    if np.any(~(r < 1.0)):
        raise OutOfDomain("points must lie in the open unit disc")
    return lam, r


def composition_transform(sym: CompositionSymbol, space: SpaceModel, lam):
    """``(1 - r^2)^d k_lam(phi(lam))`` for ``phi(z) = zeta |z|^k z``; vectorized."""
    lam, r = _disc_radius(lam)
    d = space.kernel_exponent
    if d == 0:
        raise DomainMismatch("composition symbols live on disc spaces")
    val = (1.0 - r**2) / (1.0 - sym.zeta * r ** (sym.k + 2))
    val = val**d
    return val if val.ndim else complex(val)


def composition_boundary_limit(sym: CompositionSymbol, space: SpaceModel):
    """Modulus of the transform as ``r -> 1``: 0 unless ``zeta = 1``, then ``(2/(k+2))^d``."""
    if sym.zeta == 1:
        return (2.0 / (sym.k + 2)) ** space.kernel_exponent
    return 0.0


def geom_shift_transform(sym: GeomShiftSymbol, space: SpaceModel, lam):
    """Exact transform of the geometric shift; vectorized.

    Hardy: ``(1 - r^2) lam / (1 - beta r^2)``. Bergman: the series
    ``(1 - r^2)^2 lam sum sqrt(n+1) (beta r^2)^n``, summed to machine precision.
    """
    lam, r = _disc_radius(lam)
    x = r**2
    if space.kind is SpaceKind.HARDY:
        val = (1.0 - x) * lam / (1.0 - sym.beta * x)
    elif space.kind is SpaceKind.BERGMAN:
        val = (1.0 - x) ** 2 * lam * _sqrt_series(sym.beta * x)
    else:
        raise DomainMismatch("geometric shift symbols live on disc spaces")
    return val if val.ndim else complex(val)


def geom_shift_printed(sym: GeomShiftSymbol, space: SpaceModel, lam):
    """The Bergman closed form as printed in the literature, ``(1-r^2)^2 lam / (1 - beta r^2)``.

    Kept for the deviation report only; it does not match the literal operator.
    """
    lam, r = _disc_radius(lam)
    x = r**2
    val = (1.0 - x) ** space.kernel_exponent * lam / (1.0 - sym.beta * x)
    return val if val.ndim else complex(val)


def _sqrt_series(q):
    """``sum_n sqrt(n+1) q^n`` for ``|q| < 1``, elementwise."""
    q = np.asarray(q, dtype=np.complex128)
    aq = float(np.max(np.abs(q))) if q.size else 0.0
    if aq == 0.0:
        return np.ones_like(q)
    # stop when sqrt(n+1) |q|^n / (1 - |q|) falls below _SERIES_EPS
    n_terms = 1
    while np.sqrt(n_terms + 1.0) * aq**n_terms / (1.0 - aq) > _SERIES_EPS:
        n_terms += max(1, n_terms // 4)
    acc = np.zeros_like(q)
    pw = np.ones_like(q)
    for n in range(n_terms):
        acc += np.sqrt(n + 1.0) * pw
        pw *= q
    return acc


def symbol_transform(op: SymbolTransformOp, lam):
    if isinstance(op.symbol, CompositionSymbol):
        return composition_transform(op.symbol, op.space, lam)
    return geom_shift_transform(op.symbol, op.space, lam)


# serialization -------------------------------------------------------------


def encode_complex(z):
    z = complex(z)
    return [z.real, z.imag]


def decode_complex(v, name="value"):
    if isinstance(v, bool):
        raise ParamOutOfRange(f"{name}: expected a number or [re, im], got {v!r}")
    if isinstance(v, Number):
        return complex(v)
    if isinstance(v, str):
        try:
            return complex(v.replace(" ", "").replace("i", "j"))
        except ValueError:
            raise ParamOutOfRange(f"{name}: cannot parse {v!r} as complex") from None
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(x, Number) and not isinstance(x, bool) for x in v
    ):
        return complex(v[0], v[1])
    raise ParamOutOfRange(f"{name}: expected a number or [re, im], got {v!r}")


def decode_matrix(rows):
    if not isinstance(rows, (list, tuple)) or not rows:
        raise ParamOutOfRange("matrix must be a non-empty list of rows")
    out = []
    for row in rows:
        if not isinstance(row, (list, tuple)):
            raise ParamOutOfRange("matrix rows must be lists")
        out.append([decode_complex(v, "matrix entry") for v in row])
    if len({len(r) for r in out}) != 1:
        raise ParamOutOfRange("matrix rows have unequal lengths")
    return as_cmatrix(out, square=True)


def op_from_spec(spec):
    """Build an operator from ``{"kind", "space", "data"}``."""
    try:
        kind = spec["kind"]
    except (KeyError, TypeError):
        raise ParamOutOfRange("operator spec needs a 'kind'") from None
    data = spec.get("data")
    if kind == "matrix":
        m = decode_matrix(data)
        space = SpaceModel.from_dict(spec["space"]) if "space" in spec else SpaceModel.finite(m.shape[0])
        return MatrixOp(space, m)
    space = SpaceModel.from_dict(spec.get("space", {"kind": "hardy", "truncation": 64}))
    if kind == "rank_one_z":
        return rank_one_z(space)
    if kind == "shift":
        if isinstance(data, dict) and "beta" in data:
            return geometric_shift(space, decode_complex(data["beta"], "beta"))
        if isinstance(data, dict) and "constant" in data:
            return constant_shift(space, decode_complex(data["constant"], "constant"))
        if not isinstance(data, (list, tuple)):
            raise ParamOutOfRange("shift data must be a weight list, {'beta': b} or {'constant': c}")
        return weighted_shift(space, [decode_complex(v, "weight") for v in data])
    if kind == "comp_symbol":
        if not isinstance(data, dict) or "zeta" not in data:
            raise ParamOutOfRange("comp_symbol data must be {'zeta': z, 'k': k}")
        return SymbolTransformOp(space, CompositionSymbol(decode_complex(data["zeta"], "zeta"), data.get("k", 0)))
    if kind == "geom_symbol":
        return SymbolTransformOp(space, GeomShiftSymbol(decode_complex(data["beta"], "beta")))
    raise ParamOutOfRange(f"unknown operator kind {kind!r}")


def op_to_spec(op):
    if isinstance(op, MatrixOp):
        return {"kind": "matrix", "space": op.space.to_dict(),
                "data": [[encode_complex(v) for v in row] for row in op.mat]}
    if isinstance(op, SymbolTransformOp):
        if isinstance(op.symbol, CompositionSymbol):
            return {"kind": "comp_symbol", "space": op.space.to_dict(),
                    "data": {"zeta": encode_complex(op.symbol.zeta), "k": op.symbol.k}}
        return {"kind": "geom_symbol", "space": op.space.to_dict(), "data": {"beta": encode_complex(op.symbol.beta)}}
    if op.label == "rank_one_z":
        return {"kind": "rank_one_z", "space": op.space.to_dict()}
    sub = np.diagonal(op.orthonormal(), offset=-1)
    if np.count_nonzero(op.mat - np.diag(np.diagonal(op.mat, -1), -1)) == 0:
        N = op.space.size
        j = np.arange(N - 1)
        w = sub * (np.sqrt(j + 2.0) if op.space.kind is SpaceKind.BERGMAN else 1.0)
        w = np.concatenate([w, [0.0]])
        return {"kind": "shift", "space": op.space.to_dict(), "data": [encode_complex(v) for v in w]}
    raise UnsupportedModel("only matrices, shifts, rank_one_z and symbols serialize")
