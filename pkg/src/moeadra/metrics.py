"""Quality indicators: non-dominated filtering, NDOM ratio, exact
hypervolume in 2D/3D, IGD, and the metric-space scaling.

All indicators treat objectives as minimized and expect points already
expressed in whatever scaling the caller compares under. Two scalings are
used by the harness: `scale_for_metrics` anchors at the analytic reference
front (ideal -> 0, nadir -> 1) and feeds the scaled IGD column, which is
therefore comparable across runs unconditionally; the hypervolume column is
instead scaled against the pooled per-objective min/max of the populations
under comparison, with reference point (1, ..., 1), so the score reflects
where each population sits inside the jointly attained objective region
(see the experiment harness in cli.py for the pooling).
"""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

REFERENCE_SET_SIZE = 1000


@dataclass(frozen=True)
class FrontApproximation:
    """Raw objective points of one final population plus their problem."""

    points: np.ndarray
    problem_id: str

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2 or len(pts) == 0:
            raise ValueError("front approximation must be a non-empty point matrix")
        if not np.all(np.isfinite(pts)):
            raise ValueError("front approximation contains non-finite values")


@njit(cache=True)
def _dominates(a, b):
    strictly = False
    for k in range(a.shape[0]):
        if a[k] > b[k]:
            return False
        if a[k] < b[k]:
            strictly = True
    return strictly


@njit(cache=True)
def _nd_mask(points):
    n = points.shape[0]
    mask = np.ones(n, dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if j != i and _dominates(points[j], points[i]):
                mask[i] = False
                break
    return mask


@njit(cache=True)
def _hv2d(points, r0, r1):
    # exact sweep over f1; handles dominated points, duplicates and points
    # beyond the reference point (they contribute nothing)
    n = points.shape[0]
    order = np.argsort(points[:, 0])
    hv = 0.0
    best = np.inf
    i = 0
    while i < n:
        x = points[order[i], 0]
        if x >= r0:
            break
        j = i
        while j < n and points[order[j], 0] == x:
            if points[order[j], 1] < best:
                best = points[order[j], 1]
            j += 1
        next_x = r0
        if j < n and points[order[j], 0] < r0:
            next_x = points[order[j], 0]
        if best < r1:
            hv += (next_x - x) * (r1 - best)
        i = j
    return hv


@njit(cache=True)
def _hv3d(points, r0, r1, r2):
    # dimension sweep: integrate 2D slices along sorted distinct f3 levels
    n = points.shape[0]
    zs = np.sort(points[:, 2])
    hv = 0.0
    scratch = np.empty((n, 2))
    k = 0
    while k < n:
        z = zs[k]
        if z >= r2:
            break
        k2 = k
        while k2 < n and zs[k2] == z:
            k2 += 1
        z_next = r2
        if k2 < n and zs[k2] < r2:
            z_next = zs[k2]
        cnt = 0
        for i in range(n):
            if points[i, 2] <= z:
                scratch[cnt, 0] = points[i, 0]
                scratch[cnt, 1] = points[i, 1]
                cnt += 1
        hv += _hv2d(scratch[:cnt], r0, r1) * (z_next - z)
        k = k2
    return hv


@njit(cache=True)
def _igd(reference, approximation):
    total = 0.0
    for i in range(reference.shape[0]):
        best = np.inf
        for j in range(approximation.shape[0]):
            d = 0.0
            for k in range(reference.shape[1]):
                diff = reference[i, k] - approximation[j, k]
                d += diff * diff
            if d < best:
                best = d
        total += math.sqrt(best)
    return total / reference.shape[0]


def _as_points(points) -> np.ndarray:
    pts = np.ascontiguousarray(points, dtype=np.float64)
    if pts.ndim != 2 or len(pts) == 0:
        raise ValueError("need a non-empty point matrix")
    return pts


def nondominated_filter(points) -> np.ndarray:
    """All points not dominated by any other; duplicates are retained."""
    pts = _as_points(points)
    return pts[_nd_mask(pts)]


def ndom_ratio(points) -> float:
    pts = _as_points(points)
    return float(_nd_mask(pts).mean())


def hypervolume(points, ref_point) -> float:
    """Lebesgue measure of the region dominated by `points` up to `ref_point`."""
    pts = _as_points(points)
    ref = np.asarray(ref_point, dtype=np.float64)
    if pts.shape[1] != ref.shape[0]:
        raise ValueError("reference point dimension mismatch")
    if pts.shape[1] == 2:
        return float(_hv2d(pts, ref[0], ref[1]))
    if pts.shape[1] == 3:
        return float(_hv3d(pts, ref[0], ref[1], ref[2]))
    raise ValueError("hypervolume supports 2 or 3 objectives")


def igd(reference_set, approximation) -> float:
    """Mean distance from each reference point to its nearest approximation point."""
    ref = _as_points(reference_set)
    approx = _as_points(approximation)
    if ref.shape[1] != approx.shape[1]:
        raise ValueError("objective dimension mismatch")
    return float(_igd(ref, approx))


# ---------------------------------------------------------------------------
# per-problem metric frame
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def reference_front(problem_id: str, k: int = REFERENCE_SET_SIZE) -> np.ndarray:
    from .problems import lookup
    front = np.ascontiguousarray(lookup(problem_id).pf_sampler(k), dtype=np.float64)
    front.setflags(write=False)
    return front


@dataclass(frozen=True)
class MetricFrame:
    """Reference-front data needed to score one problem's populations."""

    problem_id: str
    reference_raw: np.ndarray
    reference_scaled: np.ndarray
    ideal: np.ndarray
    span: np.ndarray


@lru_cache(maxsize=None)
def metric_frame(problem_id: str) -> MetricFrame:
    ref = reference_front(problem_id)
    ideal = ref.min(axis=0)
    nadir = ref.max(axis=0)
    span = nadir - ideal
    scaled = np.ascontiguousarray((ref - ideal) / span)
    scaled.setflags(write=False)
    return MetricFrame(
        problem_id=problem_id,
        reference_raw=ref,
        reference_scaled=scaled,
        ideal=ideal,
        span=span,
    )


def scale_for_metrics(points, problem) -> np.ndarray:
    """Map raw objectives into the problem's reference-front frame."""
    pid = problem if isinstance(problem, str) else problem.id
    frame = metric_frame(pid)
    return (_as_points(points) - frame.ideal) / frame.span
