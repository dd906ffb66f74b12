"""Berezin transform evaluation and extremal quantities.

All suprema and infima are taken over a polar grid on ``|lam| <= rmax`` (or
over the index set of a finite space), followed by multi-start local
refinement. Reported uncertainties have two parts: a grid term, the largest
change of the objective across a one-step stencil around the final witness,
and a truncation term, ``3 * tail * ||T||_est`` at the witness propagated
through the objective.
"""
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import _backend
from .errors import DomainMismatch, OutOfDomain, ParamOutOfRange, UnsupportedModel
from .means import InterpolatedMean, path_value
from .operators import (
    CoeffMapOp,
    GeomShiftSymbol,
    MatrixOp,
    SymbolTransformOp,
    encode_complex,
    geom_shift_printed,
    geom_shift_transform,
    geometric_shift,
    realize,
    symbol_transform,
)
from .spaces import DiscGrid, SpaceKind, SpaceModel, check_point, make_grid, normalized_tail, required_truncation


@dataclass(frozen=True)
class SweepConfig:
    grid: DiscGrid
    refine_rounds: int = 24
    refine_factor: float = 2.0
    tol: float = 1e-12
    starts: int = 5
    window: int = 5

    def __post_init__(self):
        if int(self.refine_rounds) < 0:
            raise ParamOutOfRange("refine_rounds must be >= 0")
        if not self.refine_factor > 1.0:
            raise ParamOutOfRange("refine_factor must exceed 1")
        if not self.tol > 0:
            raise ParamOutOfRange("tol must be positive")
        if int(self.starts) < 1 or int(self.window) < 3:
            raise ParamOutOfRange("need starts >= 1 and window >= 3")

    @classmethod
    def for_space(cls, space: SpaceModel, radial=48, angular=64, rmax=0.995, **kw):
        return cls(make_grid(space, radial, angular, rmax), **kw)

    def to_dict(self):
        return {"grid": self.grid.to_dict(), "refine_rounds": self.refine_rounds,
                "refine_factor": self.refine_factor, "tol": self.tol,
                "starts": self.starts, "window": self.window}


@dataclass(frozen=True)
class ExtremalResult:
    value: float
    witness: object
    uncertainty: float
    grid_term: float = 0.0
    trunc_term: float = 0.0
    at_boundary: bool = False
    history: tuple = field(default=(), repr=False)

    def to_dict(self):
        w = self.witness
        w = int(w) if isinstance(w, (int, np.integer)) else encode_complex(w)
        return {"value": self.value, "witness": w, "uncertainty": self.uncertainty,
                "grid_term": self.grid_term, "trunc_term": self.trunc_term,
                "at_boundary": self.at_boundary}


class PointForms(NamedTuple):
    t: np.ndarray       # transform values
    norm: np.ndarray    # ||T k_hat||, nan when the model has no vector action
    trunc: np.ndarray   # truncation bound shared by both


def _kind_code(space):
    return _backend.HARDY if space.kind is SpaceKind.HARDY else _backend.BERGMAN


def point_forms(op, lambdas) -> PointForms:
    """Transform, kernel-image norm and truncation bound at many points."""
    if isinstance(op, MatrixOp):
        idx = np.asarray(lambdas)
        if idx.dtype.kind not in "iu":
            raise DomainMismatch("finite spaces take integer indices")
        idx = idx.ravel()
        if np.any((idx < 0) | (idx >= op.space.size)):
            raise DomainMismatch("index outside the finite space")
        m = op.mat
        t = np.diagonal(m)[idx]
        nrm = np.sqrt(np.sum(np.abs(m) ** 2, axis=0))[idx]
        return PointForms(t, nrm, np.zeros(idx.size))
    lam = np.asarray(lambdas, dtype=np.complex128).ravel()
    r = np.abs(lam)
    if np.any(~(r < 1.0)):
        raise OutOfDomain("points must lie in the open unit disc")
    if isinstance(op, SymbolTransformOp):
        t = np.asarray(symbol_transform(op, lam), dtype=np.complex128).ravel()
        return PointForms(t, np.full(lam.size, np.nan), np.zeros(lam.size))
    if not isinstance(op, CoeffMapOp):
        raise UnsupportedModel(f"no Berezin model for {type(op).__name__}")
    t, nsq, _ = _backend.kernel_forms(op.kernel_operand, lam, _kind_code(op.space))
    if op.exact:
        trunc = np.zeros(lam.size)
    else:
        # shifts push index N-1 out of the truncation, so the tail starts there
        trunc = 3.0 * normalized_tail(op.space, r, op.space.size - 1) * op.norm_estimate
    return PointForms(np.asarray(t), np.sqrt(nsq), trunc)


def _vector_model(op):
    if isinstance(op, SymbolTransformOp):
        return realize(op)
    return op


def transform(op, lam):
    """``<T k_hat, k_hat>`` at one point (complex) or at an array of points."""
    scalar = np.ndim(lam) == 0
    if scalar:
        lam = check_point(op.space, lam)
    t = point_forms(op, np.atleast_1d(lam)).t
    return complex(t[0]) if scalar else t


def transform_norm(op, lam):
    """``||T k_hat||`` at one point or an array of points."""
    op = _vector_model(op)
    scalar = np.ndim(lam) == 0
    if scalar:
        lam = check_point(op.space, lam)
    n = point_forms(op, np.atleast_1d(lam)).norm
    return float(n[0]) if scalar else n


def transform_bound(op, lam):
    """Truncation uncertainty attached to :func:`transform` and :func:`transform_norm`."""
    if isinstance(op, SymbolTransformOp):
        return 0.0
    lam = check_point(op.space, lam)
    return float(point_forms(op, [lam]).trunc[0])


# objectives are monotone maps g(|t|, ||T k_hat||) -----------------------------


def _perturbation(g, a, b, d):
    """Worst change of a monotone ``g`` when both arguments move by ``d``."""
    if not np.any(d > 0):
        return np.zeros_like(a)
    up = g(a + d, b + d) - g(a, b)
    down = g(a, b) - g(np.maximum(a - d, 0.0), np.maximum(b - d, 0.0))
    return np.maximum(np.maximum(up, down), 0.0)


def _extremum(op, g, cfg: SweepConfig, maximize=True, needs_norm=False):
    if needs_norm:
        op = _vector_model(op)
    if op.space.is_disc != (cfg.grid.space.is_disc) or (op.space.is_disc and op.space.kind != cfg.grid.space.kind):
        raise DomainMismatch(f"grid is for {cfg.grid.space}, operator lives on {op.space}")
    sign = 1.0 if maximize else -1.0

    def score(pts):
        f = point_forms(op, pts)
        a = np.abs(f.t)
        b = f.norm if needs_norm else a
        return g(a, b), f

    if not op.space.is_disc:
        pts = np.arange(op.space.size)
        vals, _ = score(pts)
        k = int(np.argmax(sign * vals))  # first index wins ties
        v = float(vals[k])
        return ExtremalResult(v, k, 0.0, history=(v,))

    grid = cfg.grid
    pts = grid.points()
    vals, _ = score(pts)
    order = np.argsort(-sign * vals, kind="stable")
    R, A = grid.radii.size, grid.angle_count
    radii = np.concatenate([[0.0], grid.radii])
    best_val = float(vals[order[0]])
    history = [best_val]

    # each start: (r, theta, dr, dtheta, value)
    starts = []
    for idx in order[: cfg.starts]:
        if idx == 0:
            ri, th = 0, 0.0
        else:
            ri, th = 1 + (idx - 1) // A, grid.angles[(idx - 1) % A]
        lo = radii[max(ri - 1, 0)]
        hi = radii[min(ri + 1, R)]
        dr = max(radii[ri] - lo, hi - radii[ri])
        starts.append([radii[ri], th, dr, 2.0 * np.pi / A, float(vals[idx])])

    w = int(cfg.window)
    offs = np.linspace(-1.0, 1.0, w)
    for _ in range(cfg.refine_rounds):
        if all(max(st[2], st[3]) < cfg.tol for st in starts):
            break
        cand = []
        for r0, t0, dr, dt, _ in starts:
            rr = np.clip(r0 + dr * offs, 0.0, grid.rmax)
            tt = t0 + dt * offs
            cand.append((rr[:, None] * np.exp(1j * tt)[None, :]).ravel())
        cv, _ = score(np.concatenate(cand))
        cv = cv.reshape(len(starts), -1)
        for s, st in enumerate(starts):
            k = int(np.argmax(sign * cv[s]))
            if sign * cv[s, k] > sign * st[4]:
                z = cand[s][k]
                st[0] = abs(z)
                st[1] = st[1] + st[3] * offs[k % w]
                st[4] = float(cv[s, k])
            st[2] /= cfg.refine_factor
            st[3] /= cfg.refine_factor
        cur = max(st[4] * sign for st in starts) * sign
        history.append(float(cur))

    s_best = min(range(len(starts)), key=lambda s: (-sign * starts[s][4], s))
    r0, t0, dr, dt, v = starts[s_best]
    witness = complex(r0 * np.exp(1j * t0))
    if abs(witness) >= 1.0:
        witness = witness / abs(witness) * grid.rmax

    # grid term from a one-step stencil at the final spacing
    sr = np.clip(r0 + dr * np.array([-1.0, 0.0, 1.0]), 0.0, grid.rmax)
    st_ = t0 + dt * np.array([-1.0, 0.0, 1.0])
    stencil = (sr[:, None] * np.exp(1j * st_)[None, :]).ravel()
    sv, _ = score(stencil)
    grid_term = float(np.max(np.abs(sv - v)))

    f = point_forms(op, [witness])
    a = np.abs(f.t)
    b = f.norm if needs_norm else a
    trunc_term = float(_perturbation(g, a, b, f.trunc)[0])
    at_boundary = bool(abs(witness) >= grid.rmax * (1.0 - 1e-12))
    return ExtremalResult(float(v), witness, grid_term + trunc_term, grid_term, trunc_term,
                          at_boundary, tuple(history))


def _default_cfg(op, cfg):
    return cfg if cfg is not None else SweepConfig.for_space(op.space)


def ber(op, cfg: SweepConfig = None) -> ExtremalResult:
    """Berezin radius, ``sup |T~|``."""
    return _extremum(op, lambda a, b: a, _default_cfg(op, cfg))


def ber_norm(op, cfg: SweepConfig = None) -> ExtremalResult:
    """Berezin norm, ``sup ||T k_hat||``."""
    return _extremum(op, lambda a, b: b, _default_cfg(op, cfg), needs_norm=True)


def c_tilde(op, cfg: SweepConfig = None) -> ExtremalResult:
    """``inf |T~|``, the distance from the origin to the Berezin range.

    On disc spaces a known boundary limit of ``|T~|`` competes with the grid
    infimum; when it wins, the result is flagged ``at_boundary`` and its
    witness is the grid point at ``rmax`` in the incumbent direction.
    """
    res = _extremum(op, lambda a, b: a, _default_cfg(op, cfg), maximize=False)
    lim = op.boundary_limit if op.space.is_disc else None
    if lim is not None and lim < res.value:
        w = res.witness
        ang = np.angle(w) if w != 0 else 0.0
        wit = complex(_default_cfg(op, cfg).grid.rmax * np.exp(1j * ang))
        return ExtremalResult(float(lim), wit, 0.0, 0.0, 0.0, True, res.history + (float(lim),))
    return res


def _check_p(p):
    p = float(p)
    if not p >= 1.0 or not np.isfinite(p):
        raise ParamOutOfRange(f"p must be >= 1, got {p}")
    return p


def sigma_objective(mean: InterpolatedMean, p):
    p = _check_p(p)
    mu = mean.axiom_mu

    def g(a, b):
        return np.power(path_value(mean.family, mu, np.power(a, p), np.power(b, p)), 1.0 / p)

    return g


def sigma_mu_norm(op, mean: InterpolatedMean, p, cfg: SweepConfig = None) -> ExtremalResult:
    """``sup (|T~|^p s_mu ||T k_hat||^p)^(1/p)``."""
    return _extremum(op, sigma_objective(mean, p), _default_cfg(op, cfg), needs_norm=True)


def range_sample(op, grid: DiscGrid):
    """Transform at every grid point, in grid order (centre, then radius-major)."""
    if op.space.is_disc != grid.space.is_disc:
        raise DomainMismatch("grid and operator live on different spaces")
    return point_forms(op, grid.points()).t


def grid_resolution(grid: DiscGrid):
    """Largest distance between neighbouring grid points."""
    if not grid.space.is_disc:
        return 0.0
    r = np.concatenate([[0.0], grid.radii])
    return float(max(np.max(np.diff(r)), grid.rmax * 2.0 * np.pi / grid.angle_count))


def attainment_diagnostic(op, mean: InterpolatedMean, p, cfg: SweepConfig = None):
    """Compare the sigma norm with the mean of the two endpoint suprema.

    ``gap = mean(ber^p, ber_norm^p) - sigma^p`` is non-negative up to
    uncertainty and vanishes when both suprema are attained together.
    ``jointly_attained`` asks whether one point (up to grid resolution and
    uncertainty) carries both suprema.
    """
    cfg = _default_cfg(op, cfg)
    p = _check_p(p)
    b = ber(op, cfg)
    bn = ber_norm(op, cfg)
    s = sigma_mu_norm(op, mean, p, cfg)
    rhs = float(mean(b.value ** p, bn.value ** p))
    gap = rhs - s.value ** p
    if op.space.is_disc:
        dist = abs(complex(b.witness) - complex(bn.witness))
    else:
        dist = float(abs(int(b.witness) - int(bn.witness)))
    res = grid_resolution(cfg.grid)
    # maximizers can form whole circles, so test each witness against the other supremum
    vec = _vector_model(op)
    f = point_forms(vec, [b.witness, bn.witness])
    tol = 1e-9 * max(b.value, bn.value, 1.0)
    joint = bool(dist <= res
                 or f.norm[0] >= bn.value - bn.uncertainty - b.uncertainty - tol
                 or abs(f.t[1]) >= b.value - b.uncertainty - bn.uncertainty - tol)
    return {
        "gap": gap,
        "witness_distance": dist,
        "resolution": res,
        "jointly_attained": joint,
        "ber": b.to_dict(),
        "ber_norm": bn.to_dict(),
        "sigma": s.to_dict(),
    }


def required_truncation_for(op, result: ExtremalResult, tol):
    """Smallest truncation whose truncation term at the witness is below ``tol``."""
    if not op.space.is_disc or isinstance(op, SymbolTransformOp) or op.exact:
        return op.space.size
    scale = 3.0 * max(op.norm_estimate, np.finfo(float).tiny)
    return required_truncation(op.space, abs(complex(result.witness)), tol / scale, offset=1)


def shift_deviation_report(beta, N=128, radii=(0.1, 0.3, 0.5, 0.7, 0.9), angles=16):
    """Bergman geometric shift: truncated oracle against the exact series and the printed closed form."""
    sym = GeomShiftSymbol(beta)
    sp = SpaceModel.bergman(N)
    op = geometric_shift(sp, sym.beta)
    th = 2.0 * np.pi * np.arange(angles) / angles
    lam = (np.asarray(radii, dtype=float)[:, None] * np.exp(1j * th)[None, :]).ravel()
    oracle = point_forms(op, lam).t
    series = geom_shift_transform(sym, sp, lam)
    printed = geom_shift_printed(sym, sp, lam)
    dev = np.abs(printed - oracle)
    k = int(np.argmax(dev))
    return {
        "beta": encode_complex(sym.beta),
        "truncation": N,
        "oracle_vs_series": float(np.max(np.abs(series - oracle))),
        "printed_vs_oracle": float(dev[k]),
        "worst_point": encode_complex(lam[k]),
        "relative": float(dev[k] / max(abs(oracle[k]), np.finfo(float).tiny)),
    }
