"""Planar geometry of sampled Berezin ranges.

Clouds are 1-D arrays of complex numbers. The convexity test compares the
filled convex hull with the samples: probes on a uniform grid inside the hull
(kept one probe spacing away from its boundary, so open edges are not
penalized) are matched to their nearest sample, and the worst distance is the
defect.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.spatial import cKDTree

from .engine import range_sample
from .errors import ParamOutOfRange
from .operators import CoeffMapOp, GeomShiftSymbol, SymbolTransformOp, encode_complex
from .spaces import DiscGrid


class Verdict(Enum):
    CONVEX = "Convex"
    NONCONVEX = "NonConvex"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ConvexityVerdict:
    defect: float
    threshold: float
    verdict: Verdict
    hull_vertices: tuple
    disc_likeness: float = None

    def to_dict(self):
        d = {
            "defect": self.defect,
            "threshold": self.threshold,
            "verdict": self.verdict.value,
            "hull_vertices": [encode_complex(z) for z in self.hull_vertices],
        }
        if self.disc_likeness is not None:
            d["disc_likeness"] = self.disc_likeness
        return d


def _cloud(points):
    z = np.asarray(points, dtype=np.complex128).ravel()
    if z.size == 0:
        raise ParamOutOfRange("point cloud is empty")
    if not np.all(np.isfinite(z)):
        raise ParamOutOfRange("point cloud has non-finite entries")
    return z


def _cross(o, a, b):
    return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)


def convex_hull(points):
    """Counterclockwise hull vertices by Andrew's monotone chain; collinear points dropped."""
    z = _cloud(points)
    pts = sorted(set(zip(z.real.tolist(), z.imag.tolist())))
    if len(pts) <= 2:
        return [complex(x, y) for x, y in pts]
    pts = [complex(x, y) for x, y in pts]
    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    hull = chain(pts)[:-1] + chain(reversed(pts))[:-1]
    # drop vertices within round-off of the line through their neighbours
    tol = 1e-13 * max(abs(p - pts[0]) for p in pts)
    changed = True
    while changed and len(hull) > 2:
        changed = False
        for i in range(len(hull)):
            u, v, w = hull[i - 1], hull[i], hull[(i + 1) % len(hull)]
            if _cross(u, v, w) <= tol * abs(w - u):
                del hull[i]
                changed = True
                break
    if len(hull) < 2:
        return [pts[0], pts[-1]]
    return hull


def _unique(z):
    """Samples with near-duplicates merged (ranges often repeat values over angles)."""
    scale = max(float(np.max(np.abs(z))), 1.0)
    key = np.round(np.stack([z.real, z.imag], axis=1) / (1e-12 * scale))
    _, idx = np.unique(key, axis=0, return_index=True)
    return z[np.sort(idx)]


def nn_spacing(points):
    """Largest nearest-neighbour distance among distinct samples."""
    z = _unique(_cloud(points))
    if z.size < 2:
        return 0.0
    xy = np.stack([z.real, z.imag], axis=1)
    d, _ = cKDTree(xy).query(xy, k=2)
    return float(np.max(d[:, 1]))


def convexity_defect(points, probe_density=64):
    """Worst distance from a probe in the filled hull to the nearest sample."""
    if not probe_density > 0:
        raise ParamOutOfRange(f"probe_density must be positive, got {probe_density}")
    z = _unique(_cloud(points))
    hull = convex_hull(z)
    xy = np.stack([z.real, z.imag], axis=1)
    tree = cKDTree(xy)
    if len(hull) == 1:
        return 0.0
    if len(hull) == 2:
        a, b = hull
        L = abs(b - a)
        n = max(int(np.ceil(probe_density)), 2)
        h = L / n
        s = np.linspace(0.0, 1.0, n + 1)
        probe = a + s * (b - a)
        d, _ = tree.query(np.stack([probe.real, probe.imag], axis=1))
        worst = float(np.max(d))
        return 0.0 if worst <= h else worst

    H = np.asarray(hull)
    lo = np.array([H.real.min(), H.imag.min()])
    hi = np.array([H.real.max(), H.imag.max()])
    h = float(np.max(hi - lo)) / float(probe_density)
    gx = np.arange(lo[0], hi[0] + 0.5 * h, h)
    gy = np.arange(lo[1], hi[1] + 0.5 * h, h)
    P = (gx[:, None] + 1j * gy[None, :]).ravel()
    V0 = H
    V1 = np.roll(H, -1)
    edge = V1 - V0
    elen = np.abs(edge)
    # signed distance to each edge; positive on the inner side of a ccw polygon
    sd = _cross(V0[None, :], V1[None, :], P[:, None]) / elen[None, :]
    inside = np.min(sd, axis=1) >= h
    P = P[inside]
    if P.size == 0:
        return 0.0
    d, _ = tree.query(np.stack([P.real, P.imag], axis=1))
    return float(np.max(d))


def disc_likeness(values, grid: DiscGrid):
    """Max over radii of the spread of ``|T~|`` over angles; 0 for a rotation-symmetric range."""
    v = np.abs(np.asarray(values).ravel()[1:]).reshape(grid.radii.size, grid.angle_count)
    return float(np.max(v.max(axis=1) - v.min(axis=1)))


def classify(points, threshold=None, probe_density=64):
    """Verdict for a sampled range; ``threshold`` defaults to twice the sample spacing."""
    z = _cloud(points)
    if threshold is None:
        threshold = 2.0 * nn_spacing(z)
    threshold = float(threshold)
    if threshold < 0:
        raise ParamOutOfRange("threshold must be non-negative")
    defect = convexity_defect(z, probe_density)
    if defect <= threshold:
        v = Verdict.CONVEX
    elif defect < 3.0 * threshold:
        v = Verdict.INCONCLUSIVE
    else:
        v = Verdict.NONCONVEX
    return ConvexityVerdict(defect, threshold, v, tuple(convex_hull(z)))


def _is_shift(op):
    if isinstance(op, SymbolTransformOp):
        return isinstance(op.symbol, GeomShiftSymbol)
    return isinstance(op, CoeffMapOp) and op.label.rstrip("*").endswith("shift")


def classify_range(op, grid: DiscGrid, threshold=None, probe_density=64):
    """Sample ``Ber(T)`` on ``grid`` and classify its convexity.

    Shift models also get ``disc_likeness``, which is ~0 when the range is
    rotation symmetric about the origin.
    """
    vals = range_sample(op, grid)
    res = classify(vals, threshold, probe_density)
    if op.space.is_disc and _is_shift(op):
        res = ConvexityVerdict(res.defect, res.threshold, res.verdict, res.hull_vertices,
                               disc_likeness(vals, grid))
    return res
