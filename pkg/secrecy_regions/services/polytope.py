"""Eight-variable rate polytope: construction, weighted-sum LPs, projection onto (R1, R2).

Two projection paths exist:

- ``trace_region`` solves one LP per weight direction (the reference path).
- ``project_bundles`` computes the exact projection of many polytopes at once without an LP
  solver and is what the power-split and input-law sweeps use.

For a fixed binning allocation t = (Rt10, Rt20, Rt12, Rt21) the remaining constraints on
(R10, R20, R12, R21) are a pentagon plus a box plus the a6 cap, so the (R1, R2) slice is
{R1 <= X(t), R2 <= Y(t), R1 + R2 <= G} with X, Y concave piecewise-linear in t and
G = min(a6, min(a3, a1 + a2) + a4 + a5 - b4) independent of t. Every support point of the
union over t is therefore attained at a vertex of the arrangement formed by the binning
constraints and the breakpoints of X, Y and the G cap; those vertices are enumerated
in closed form below.
"""
from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Sequence
from typing import Literal

import numpy as np
from scipy.optimize import linprog

from secrecy_regions.core.errors import ConfigError, NumericError
from secrecy_regions.schemas.region import (
    RATE_VARIABLES,
    Constraint,
    LpResult,
    MutualInfoBundle,
    RatePoint,
    RatePolytope,
    Region2D,
)

logger = logging.getLogger(__name__)

DEFAULT_ANGLES = 181
PIVOT_TOLERANCE = 1e-10
_FEASIBILITY_TOL = 1e-9
_COLLINEAR_TOL = 1e-12

BinningMode = Literal["equality", "at_most"]


def _row(**coeffs: float) -> tuple[float, ...]:
    return tuple(float(coeffs.get(name, 0.0)) for name in RATE_VARIABLES)


def build_polytope(m: MutualInfoBundle, binning: BinningMode = "equality") -> RatePolytope:
    """Constraint system of the partial decode-and-forward region for one input law.

    ``binning="at_most"`` relaxes the total binning rate from ``= b4`` to ``<= b4``; it exists
    only for ``binning_diagnostic``.
    """
    rows = [
        Constraint(coefficients=_row(R10=1, Rt10=1), relation="<=", rhs=m.a1, label="a1"),
        Constraint(coefficients=_row(R20=1, Rt20=1), relation="<=", rhs=m.a2, label="a2"),
        Constraint(coefficients=_row(R10=1, R20=1, Rt10=1, Rt20=1), relation="<=", rhs=m.a3, label="a3"),
        Constraint(coefficients=_row(R12=1, Rt12=1), relation="<=", rhs=m.a4, label="a4"),
        Constraint(coefficients=_row(R21=1, Rt21=1), relation="<=", rhs=m.a5, label="a5"),
        Constraint(coefficients=_row(R10=1, R20=1, R12=1, R21=1), relation="<=", rhs=m.a6, label="a6"),
        Constraint(coefficients=_row(Rt10=1), relation="<=", rhs=m.b1, label="b1"),
        Constraint(coefficients=_row(Rt20=1), relation="<=", rhs=m.b2, label="b2"),
        Constraint(coefficients=_row(Rt10=1, Rt20=1), relation="<=", rhs=m.b3, label="b3"),
        Constraint(
            coefficients=_row(Rt10=1, Rt20=1, Rt12=1, Rt21=1),
            relation="=" if binning == "equality" else "<=",
            rhs=m.b4,
            label="b4",
        ),
    ]
    return RatePolytope(constraints=rows)


def max_weighted_rate(p: RatePolytope, w1: float, w2: float) -> LpResult:
    """Maximize w1 * (R10 + R12) + w2 * (R20 + R21) over the polytope."""
    if w1 < 0 or w2 < 0 or (w1 == 0 and w2 == 0):
        raise ConfigError(f"weights must be non-negative and not both zero, got ({w1}, {w2})", field="weights")
    a_ub, b_ub, a_eq, b_eq = p.matrices()
    objective = -np.array(_row(R10=w1, R12=w1, R20=w2, R21=w2))
    res = linprog(
        objective,
        A_ub=a_ub if a_ub.size else None,
        b_ub=b_ub if b_ub.size else None,
        A_eq=a_eq if a_eq.size else None,
        b_eq=b_eq if b_eq.size else None,
        bounds=[(0, None)] * len(RATE_VARIABLES),
        method="highs-ds",
        options={
            "primal_feasibility_tolerance": PIVOT_TOLERANCE,
            "dual_feasibility_tolerance": PIVOT_TOLERANCE,
        },
    )
    if res.status == 2:
        return LpResult(feasible=False)
    if res.status == 3:
        raise NumericError("weighted-rate LP is unbounded; every rate variable should be capped")
    if res.status != 0:
        raise NumericError(f"weighted-rate LP failed (status {res.status}): {res.message}")
    x = res.x
    r1 = max(0.0, float(x[0] + x[2]))
    r2 = max(0.0, float(x[1] + x[3]))
    return LpResult(feasible=True, value=w1 * r1 + w2 * r2, point=RatePoint(r1=r1, r2=r2))


def weight_directions(angles: int) -> np.ndarray:
    """Unit weights (cos t, sin t) for ``angles`` values of t evenly spaced on [0, pi/2]."""
    if angles < 2:
        raise ConfigError(f"angles must be at least 2, got {angles}", field="angles")
    theta = np.linspace(0.0, math.pi / 2.0, angles)
    w = np.column_stack([np.cos(theta), np.sin(theta)])
    w[np.abs(w) < 1e-15] = 0.0
    return w


def trace_region(p: RatePolytope, angles: int = DEFAULT_ANGLES) -> Region2D:
    """Region2D from LP support points over ``angles`` weight directions (axis extremes included)."""
    points: list[tuple[float, float]] = []
    for w1, w2 in weight_directions(angles):
        res = max_weighted_rate(p, float(w1), float(w2))
        if not res.feasible:
            logger.debug("Polytope infeasible; region is the origin")
            return Region2D.origin()
        points.append(res.point.as_tuple())
    return hull2d(points)


# --- 2-D hull ----------------------------------------------------------------------------------


def _as_points(points: Iterable[RatePoint] | Sequence[Sequence[float]] | np.ndarray) -> np.ndarray:
    if isinstance(points, np.ndarray):
        arr = points.astype(float, copy=False)
    else:
        rows = [p.as_tuple() if isinstance(p, RatePoint) else tuple(p) for p in points]
        arr = np.array(rows, dtype=float)
    return arr.reshape(-1, 2)


def _pareto_front(pts: np.ndarray) -> np.ndarray:
    """Non-dominated points sorted by increasing r1 (strictly decreasing r2)."""
    order = np.lexsort((-pts[:, 1], -pts[:, 0]))
    s = pts[order]
    best_before = np.concatenate(([-np.inf], np.maximum.accumulate(s[:, 1])[:-1]))
    return s[s[:, 1] > best_before][::-1]


def _cross(o: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    return float((a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]))


def upper_right_hull(points: np.ndarray) -> np.ndarray:
    """Vertices of the downward-closed convex hull of ``points`` and the origin, as an (n, 2) array."""
    pts = np.clip(_as_points(points), 0.0, None)
    if pts.shape[0] == 0:
        return np.zeros((1, 2))
    x_max, y_max = float(pts[:, 0].max()), float(pts[:, 1].max())
    if x_max <= 0.0 and y_max <= 0.0:
        return np.zeros((1, 2))
    front = _pareto_front(pts)
    if front[0, 0] > 0.0:
        front = np.vstack([[0.0, y_max], front])
    if front[-1, 1] > 0.0:
        front = np.vstack([front, [x_max, 0.0]])
    tol = _COLLINEAR_TOL * max(1.0, x_max, y_max) ** 2
    hull: list[np.ndarray] = []
    for p in front:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) >= -tol:
            hull.pop()
        hull.append(p)
    return np.array(hull)


def _region_from_array(vertices: np.ndarray) -> Region2D:
    return Region2D(hull=[RatePoint(r1=float(x), r2=float(y)) for x, y in vertices])


def hull2d(points: Iterable[RatePoint] | Sequence[Sequence[float]] | np.ndarray) -> Region2D:
    """Upper-right convex hull of points, the origin and their axis projections; idempotent."""
    pts = _as_points(points)
    if pts.shape[0] == 0:
        raise ConfigError("hull2d needs at least one point", field="points")
    return _region_from_array(upper_right_hull(pts))


def merge_regions(regions: Iterable[Region2D]) -> Region2D:
    """Convex hull of a union of regions."""
    stacked = [r.vertices() for r in regions]
    if not stacked:
        return Region2D.origin()
    return hull2d(np.vstack(stacked))


def region_contains(r: Region2D, pt: RatePoint | Sequence[float], tol: float = 1e-9) -> bool:
    """True iff ``pt`` lies within ``tol`` bits (per coordinate) of the region."""
    x, y = pt.as_tuple() if isinstance(pt, RatePoint) else (float(pt[0]), float(pt[1]))
    x, y = max(0.0, x - tol), max(0.0, y - tol)
    verts = r.vertices()
    if x > verts[:, 0].max() + 1e-12 or y > verts[:, 1].max() + 1e-12:
        return False
    q = np.array([x, y])
    scale = max(1.0, float(verts.max()))
    for a, b in zip(verts, verts[1:]):
        if b[0] > a[0] and _cross(a, b, q) > _COLLINEAR_TOL * scale**2:
            return False
    return True


def _segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    ab = b - a
    denom = float(ab @ ab)
    t = 0.0 if denom == 0.0 else float(np.clip((p - a) @ ab / denom, 0.0, 1.0))
    return float(np.linalg.norm(p - (a + t * ab)))


def distance_to_region(pt: Sequence[float], r: Region2D) -> float:
    """Euclidean distance from a non-negative point to the region (0 inside)."""
    if region_contains(r, pt, tol=0.0):
        return 0.0
    p = np.asarray(pt, dtype=float)
    verts = r.vertices()
    if len(verts) == 1:
        return float(np.linalg.norm(p - verts[0]))
    return min(_segment_distance(p, a, b) for a, b in zip(verts, verts[1:]))


def hausdorff_distance(r: Region2D, s: Region2D) -> float:
    """Two-sided Hausdorff distance; for convex polygons the sup is attained at a vertex."""
    there = max(distance_to_region(v, s) for v in r.vertices())
    back = max(distance_to_region(v, r) for v in s.vertices())
    return max(there, back)


def corner_points(x: np.ndarray, y: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Corners of {R1 <= x, R2 <= y, R1 + R2 <= s} per row; rows with s < 0 are empty."""
    x, y, s = (np.atleast_1d(np.asarray(v, dtype=float)) for v in (x, y, s))
    ok = s >= 0.0
    x, y, s = np.clip(x[ok], 0.0, None), np.clip(y[ok], 0.0, None), s[ok]
    xa = np.minimum(x, s)
    ya = np.clip(np.minimum(y, s - xa), 0.0, None)
    yb = np.minimum(y, s)
    xb = np.clip(np.minimum(x, s - yb), 0.0, None)
    return np.vstack([np.column_stack([xa, ya]), np.column_stack([xb, yb])])


def max_sum_on_region(r: Region2D) -> float:
    """Largest R1 + R2 on the region (its sum-rate face)."""
    return float(r.vertices().sum(axis=1).max())


# --- exact projection --------------------------------------------------------------------------

# Normals of the arrangement planes in binning coordinates (c, d, e) = (Rt10, Rt20, Rt12);
# Rt21 = b4 - c - d - e.
_NORMALS = np.array(
    [
        [1, 0, 0],  # c
        [0, 1, 0],  # d
        [0, 0, 1],  # e
        [1, 1, 0],  # c + d
        [1, 1, 1],  # c + d + e
        [1, 0, 1],  # c + e
    ],
    dtype=float,
)


def _independent_triples() -> list[tuple[tuple[int, int, int], np.ndarray]]:
    out = []
    for tri in itertools.combinations(range(len(_NORMALS)), 3):
        m = _NORMALS[list(tri)]
        if abs(np.linalg.det(m)) > 0.5:
            out.append((tri, np.linalg.inv(m).T))
    return out


_TRIPLES = _independent_triples()


def _plane_offsets(k: np.ndarray) -> tuple[np.ndarray, list[list[np.ndarray]]]:
    a1, a2, a3, a4, a5, a6, b1, b2, b3, b4 = k.T
    g = np.minimum(a6, np.minimum(a3, a1 + a2) + a4 + a5 - b4)
    zero = np.zeros_like(a1)
    offsets = [
        # c: bounds, breakpoint of Y, X_A + Y_B = G
        [zero, np.minimum(b1, a1), a3 - a2, a4 + a1 + a5 + a3 - b4 - g],
        # d: bounds, breakpoint of X, X_B + Y_A = G
        [zero, np.minimum(b2, a2), a3 - a1, a4 + a3 + a5 + a2 - b4 - g],
        # e: bounds, Y_B = G
        [zero, a4, g - a5 - a3 + b4],
        # c + d: bound, X_B + Y_B = G
        [np.minimum(b3, a3), a4 + 2.0 * a3 + a5 - b4 - g],
        # c + d + e: Rt21 = 0, Rt21 = a5, X_B = G
        [b4, b4 - a5, a4 + a3 - g],
        # c + e: X_A = G, Y_A = G
        [a4 + a1 - g, g - a5 - a2 + b4],
    ]
    return g, offsets


def project_bundles(bundles: np.ndarray) -> np.ndarray:
    """Support-point candidates of the (R1, R2) projections of many polytopes.

    ``bundles`` has one row ``(a1..a6, b1..b4)`` per polytope (equality binning). Returns an
    (n, 2) array whose downward-closed convex hull equals the hull of the union of the
    projections; infeasible polytopes contribute nothing.
    """
    k = np.asarray(bundles, dtype=float).reshape(-1, 10)
    if k.shape[0] == 0:
        return np.zeros((0, 2))
    a1, a2, a3, a4, a5, _, b1, b2, b3, b4 = (col[:, None] for col in k.T)
    g, offsets = _plane_offsets(k)

    blocks = []
    for (i, j, l), inv_t in _TRIPLES:
        for ri, rj, rl in itertools.product(offsets[i], offsets[j], offsets[l]):
            blocks.append(np.stack([ri, rj, rl], axis=-1) @ inv_t)
    t = np.stack(blocks, axis=1)  # (S, K, 3)
    c, d, e = t[..., 0], t[..., 1], t[..., 2]
    f = b4 - c - d - e

    tol = _FEASIBILITY_TOL
    ok = (
        (c >= -tol) & (c <= np.minimum(b1, a1) + tol)
        & (d >= -tol) & (d <= np.minimum(b2, a2) + tol)
        & (c + d <= np.minimum(b3, a3) + tol)
        & (e >= -tol) & (e <= a4 + tol)
        & (f >= -tol) & (f <= a5 + tol)
        & (g[:, None] >= -tol)
    )
    if not ok.any():
        return np.zeros((0, 2))

    gg = np.broadcast_to(np.maximum(g, 0.0)[:, None], c.shape)
    x = np.clip(a4 - c - e + np.minimum(a1, a3 - d), 0.0, None)
    y = np.clip(a5 - d - f + np.minimum(a2, a3 - c), 0.0, None)
    # best corner of {R1 <= x, R2 <= y, R1 + R2 <= G} when R1 (resp. R2) has the larger weight
    xa = np.minimum(x, gg)
    ya = np.clip(np.minimum(y, gg - xa), 0.0, None)
    yb = np.minimum(y, gg)
    xb = np.clip(np.minimum(x, gg - yb), 0.0, None)
    pts = np.concatenate(
        [np.column_stack([xa[ok], ya[ok]]), np.column_stack([xb[ok], yb[ok]])], axis=0
    )
    return pts


def project_bundle(m: MutualInfoBundle) -> Region2D:
    """Exact (R1, R2) projection of one polytope."""
    pts = project_bundles(m.as_array()[None, :])
    if pts.shape[0] == 0:
        return Region2D.origin()
    return hull2d(pts)


def reduce_candidates(points: np.ndarray) -> np.ndarray:
    """Shrink a point cloud to the vertices of its downward-closed hull (keeps merges cheap)."""
    if points.shape[0] == 0:
        return points
    return upper_right_hull(points)


def binning_diagnostic(m: MutualInfoBundle, angles: int = DEFAULT_ANGLES) -> dict[str, object]:
    """Trace the region with the total binning rate fixed (``=``) and relaxed (``<=``).

    Reports both regions, their sum-rate faces and the Hausdorff gap between them; no claim
    is made about which variant is intended.
    """
    exact = trace_region(build_polytope(m, "equality"), angles)
    relaxed = trace_region(build_polytope(m, "at_most"), angles)
    return {
        "equality": exact,
        "at_most": relaxed,
        "sum_rate_equality": max_sum_on_region(exact),
        "sum_rate_at_most": max_sum_on_region(relaxed),
        "hausdorff": hausdorff_distance(exact, relaxed),
    }
