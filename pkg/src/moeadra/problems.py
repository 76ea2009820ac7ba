"""Benchmark problem suite: DTLZ1-7 (two objectives) and UF1-10 at dimension 100.

Every problem is a box-constrained minimization problem. DTLZ problems are
instantiated with 2 objectives (99 distance variables); UF1-7 are
two-objective and UF8-10 three-objective, with the variable groupings and
bounds of their defining publications. Each problem carries a sampler for
its analytic Pareto front, used as the reference set for IGD and for the
metric-space scaling.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from numba import njit

DIM = 100

# integer codes for the jit-compiled evaluator dispatch
_CODES = {
    "dtlz1": 0, "dtlz2": 1, "dtlz3": 2, "dtlz4": 3, "dtlz5": 4,
    "dtlz6": 5, "dtlz7": 6,
    "uf1": 7, "uf2": 8, "uf3": 9, "uf4": 10, "uf5": 11, "uf6": 12,
    "uf7": 13, "uf8": 14, "uf9": 15, "uf10": 16,
}


@dataclass
class EvalCounter:
    """Counts objective-function evaluations consumed by one run."""

    count: int = 0

    def bump(self, n: int = 1) -> None:
        if n < 0:
            raise ValueError("evaluation count cannot decrease")
        self.count += n


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark problem: identity, shape, bounds and front sampler."""

    id: str
    m: int
    dim: int
    lower: np.ndarray
    upper: np.ndarray
    pf_sampler: Callable[[int], np.ndarray]
    code: int = field(repr=False, default=-1)


# ---------------------------------------------------------------------------
# jit evaluators
# ---------------------------------------------------------------------------

@njit(cache=True)
def _dtlz_g1(x):
    # Rastrigin-style distance function of DTLZ1/DTLZ3 over x[1:]
    k = x.shape[0] - 1
    s = 0.0
    for i in range(1, x.shape[0]):
        d = x[i] - 0.5
        s += d * d - math.cos(20.0 * math.pi * d)
    return 100.0 * (k + s)


@njit(cache=True)
def _dtlz_g2(x):
    s = 0.0
    for i in range(1, x.shape[0]):
        d = x[i] - 0.5
        s += d * d
    return s


@njit(cache=True)
def _eval_dtlz(code, x, out):
    half_pi = 0.5 * math.pi
    if code == 0:  # dtlz1
        g = _dtlz_g1(x)
        out[0] = 0.5 * x[0] * (1.0 + g)
        out[1] = 0.5 * (1.0 - x[0]) * (1.0 + g)
    elif code == 1 or code == 4:  # dtlz2 / dtlz5 (identical at m=2)
        g = _dtlz_g2(x)
        out[0] = (1.0 + g) * math.cos(half_pi * x[0])
        out[1] = (1.0 + g) * math.sin(half_pi * x[0])
    elif code == 2:  # dtlz3
        g = _dtlz_g1(x)
        out[0] = (1.0 + g) * math.cos(half_pi * x[0])
        out[1] = (1.0 + g) * math.sin(half_pi * x[0])
    elif code == 3:  # dtlz4, position variable biased by power 100
        g = _dtlz_g2(x)
        t = x[0] ** 100.0
        out[0] = (1.0 + g) * math.cos(half_pi * t)
        out[1] = (1.0 + g) * math.sin(half_pi * t)
    elif code == 5:  # dtlz6
        g = 0.0
        for i in range(1, x.shape[0]):
            g += x[i] ** 0.1
        out[0] = (1.0 + g) * math.cos(half_pi * x[0])
        out[1] = (1.0 + g) * math.sin(half_pi * x[0])
    else:  # dtlz7
        k = x.shape[0] - 1
        s = 0.0
        for i in range(1, x.shape[0]):
            s += x[i]
        g = 1.0 + 9.0 * s / k
        f1 = x[0]
        h = 2.0 - f1 / (1.0 + g) * (1.0 + math.sin(3.0 * math.pi * f1))
        out[0] = f1
        out[1] = (1.0 + g) * h


@njit(cache=True)
def _eval_uf2(code, x, out):
    # two-objective UF problems; odd/even variable groups J1/J2 over j = 2..n
    n = x.shape[0]
    x1 = x[0]
    s1 = 0.0
    s2 = 0.0
    n1 = 0
    n2 = 0
    p1 = 1.0  # cosine products of UF3/UF6
    p2 = 1.0
    for j in range(2, n + 1):
        xj = x[j - 1]
        if code == 7 or code == 13:  # uf1, uf7
            y = xj - math.sin(6.0 * math.pi * x1 + j * math.pi / n)
            t = y * y
        elif code == 8:  # uf2
            a = 0.3 * x1 * x1 * math.cos(24.0 * math.pi * x1 + 4.0 * j * math.pi / n) + 0.6 * x1
            if j % 2 == 1:
                y = xj - a * math.cos(6.0 * math.pi * x1 + j * math.pi / n)
            else:
                y = xj - a * math.sin(6.0 * math.pi * x1 + j * math.pi / n)
            t = y * y
        elif code == 9:  # uf3
            y = xj - x1 ** (0.5 * (1.0 + 3.0 * (j - 2.0) / (n - 2.0)))
            t = y * y
        elif code == 10:  # uf4
            y = xj - math.sin(6.0 * math.pi * x1 + j * math.pi / n)
            t = abs(y) / (1.0 + math.exp(2.0 * abs(y)))
        else:  # uf5, uf6
            y = xj - math.sin(6.0 * math.pi * x1 + j * math.pi / n)
            if code == 11:
                t = 2.0 * y * y - math.cos(4.0 * math.pi * y) + 1.0
            else:
                t = y * y
        if j % 2 == 1:
            s1 += t
            n1 += 1
            if code == 9 or code == 12:
                p1 *= math.cos(20.0 * y * math.pi / math.sqrt(j))
        else:
            s2 += t
            n2 += 1
            if code == 9 or code == 12:
                p2 *= math.cos(20.0 * y * math.pi / math.sqrt(j))

    if code == 7:  # uf1
        out[0] = x1 + 2.0 * s1 / n1
        out[1] = 1.0 - math.sqrt(x1) + 2.0 * s2 / n2
    elif code == 8:  # uf2
        out[0] = x1 + 2.0 * s1 / n1
        out[1] = 1.0 - math.sqrt(x1) + 2.0 * s2 / n2
    elif code == 9:  # uf3
        out[0] = x1 + 2.0 * (4.0 * s1 - 2.0 * p1 + 2.0) / n1
        out[1] = 1.0 - math.sqrt(x1) + 2.0 * (4.0 * s2 - 2.0 * p2 + 2.0) / n2
    elif code == 10:  # uf4
        out[0] = x1 + 2.0 * s1 / n1
        out[1] = 1.0 - x1 * x1 + 2.0 * s2 / n2
    elif code == 11:  # uf5, n_seg = 10
        bump = (0.05 + 0.1) * abs(math.sin(20.0 * math.pi * x1))
        out[0] = x1 + bump + 2.0 * s1 / n1
        out[1] = 1.0 - x1 + bump + 2.0 * s2 / n2
    elif code == 12:  # uf6, n_seg = 2
        bump = 2.0 * (0.25 + 0.1) * math.sin(4.0 * math.pi * x1)
        if bump < 0.0:
            bump = 0.0
        out[0] = x1 + bump + 2.0 * (4.0 * s1 - 2.0 * p1 + 2.0) / n1
        out[1] = 1.0 - x1 + bump + 2.0 * (4.0 * s2 - 2.0 * p2 + 2.0) / n2
    else:  # uf7
        r = x1 ** 0.2
        out[0] = r + 2.0 * s1 / n1
        out[1] = 1.0 - r + 2.0 * s2 / n2


@njit(cache=True)
def _eval_uf3obj(code, x, out):
    # three-objective UF8/UF9/UF10; groups J1/J2/J3 by j mod 3 over j = 3..n
    n = x.shape[0]
    x1 = x[0]
    x2 = x[1]
    s1 = 0.0
    s2 = 0.0
    s3 = 0.0
    n1 = 0
    n2 = 0
    n3 = 0
    for j in range(3, n + 1):
        y = x[j - 1] - 2.0 * x2 * math.sin(2.0 * math.pi * x1 + j * math.pi / n)
        if code == 16:  # uf10
            t = 4.0 * y * y - math.cos(8.0 * math.pi * y) + 1.0
        else:
            t = y * y
        r = j % 3
        if r == 1:
            s1 += t
            n1 += 1
        elif r == 2:
            s2 += t
            n2 += 1
        else:
            s3 += t
            n3 += 1

    half_pi = 0.5 * math.pi
    if code == 15:  # uf9
        eps = 0.1
        a = (1.0 + eps) * (1.0 - 4.0 * (2.0 * x1 - 1.0) ** 2)
        if a < 0.0:
            a = 0.0
        out[0] = 0.5 * (a + 2.0 * x1) * x2 + 2.0 * s1 / n1
        out[1] = 0.5 * (a - 2.0 * x1 + 2.0) * x2 + 2.0 * s2 / n2
        out[2] = 1.0 - x2 + 2.0 * s3 / n3
    else:  # uf8, uf10
        out[0] = math.cos(half_pi * x1) * math.cos(half_pi * x2) + 2.0 * s1 / n1
        out[1] = math.cos(half_pi * x1) * math.sin(half_pi * x2) + 2.0 * s2 / n2
        out[2] = math.sin(half_pi * x1) + 2.0 * s3 / n3


@njit(cache=True)
def _eval_raw(code, x, out):
    """Dispatch one raw objective evaluation by problem code."""
    if code <= 6:
        _eval_dtlz(code, x, out)
    elif code <= 13:
        _eval_uf2(code, x, out)
    else:
        _eval_uf3obj(code, x, out)


# ---------------------------------------------------------------------------
# Pareto-front reference sets
# ---------------------------------------------------------------------------

def _segment_sweep(k: int, f1_of_t, f2_of_t) -> np.ndarray:
    t = np.linspace(0.0, 1.0, k)
    return np.column_stack([f1_of_t(t), f2_of_t(t)])


def _pf_dtlz1(k):
    t = np.linspace(0.0, 1.0, k)
    return np.column_stack([0.5 * t, 0.5 * (1.0 - t)])


def _pf_circle(k):
    # concave quarter circle shared by dtlz2/3/4/5/6 at two objectives
    t = np.linspace(0.0, 0.5 * np.pi, k)
    return np.column_stack([np.cos(t), np.sin(t)])


def _pf_dtlz7(k):
    t = np.linspace(0.0, 1.0, max(8 * k, 4000))
    f2 = 4.0 - t * (1.0 + np.sin(3.0 * np.pi * t))
    pts = np.column_stack([t, f2])
    from .metrics import nondominated_filter
    nd = nondominated_filter(pts)
    nd = nd[np.argsort(nd[:, 0])]
    idx = np.unique(np.round(np.linspace(0, len(nd) - 1, k)).astype(int))
    out = nd[idx]
    if len(out) < k:  # rounding collisions, top up from the dense sweep
        extra = nd[np.linspace(0, len(nd) - 1, k - len(out), dtype=int)]
        out = np.vstack([out, extra])
    return out[:k]


def _pf_sqrt(k):
    t = np.linspace(0.0, 1.0, k)
    return np.column_stack([t, 1.0 - np.sqrt(t)])


def _pf_square(k):
    t = np.linspace(0.0, 1.0, k)
    return np.column_stack([t, 1.0 - t * t])


def _pf_uf5(k):
    base = np.array([[i / 20.0, 1.0 - i / 20.0] for i in range(21)])
    reps = -(-k // len(base))  # front is 21 isolated points; cycle to size k
    return np.tile(base, (reps, 1))[:k]


def _pf_uf6(k):
    ka = (k - 1) // 2
    kb = k - 1 - ka
    seg1 = np.linspace(0.25, 0.5, ka)
    seg2 = np.linspace(0.75, 1.0, kb)
    f1 = np.concatenate([[0.0], seg1, seg2])
    return np.column_stack([f1, 1.0 - f1])


def _pf_line(k):
    t = np.linspace(0.0, 1.0, k)
    return np.column_stack([t, 1.0 - t])


def _pf_sphere(k):
    # unit-sphere octant: simplex lattice projected onto the sphere,
    # corners included so ideal and nadir are exact
    h = 1
    while (h + 2) * (h + 1) // 2 < k:
        h += 1
    w = []
    for i in range(h + 1):
        for j in range(h + 1 - i):
            w.append((i / h, j / h, (h - i - j) / h))
    w = np.array(w)
    pts = w / np.linalg.norm(w, axis=1, keepdims=True)
    corners = [idx for idx, p in enumerate(w) if np.isclose(p.max(), 1.0)]
    if k <= len(corners):
        return pts[np.array(corners[:k])]
    rest = [idx for idx in range(len(w)) if idx not in corners]
    take = np.linspace(0, len(rest) - 1, k - len(corners)).astype(int)
    sel = corners + [rest[i] for i in take]
    return pts[np.array(sel)]


def _pf_uf9(k):
    # two planar patches f = (a*s, (1-a)*s, 1-s), a in [0,1/4] u [3/4,1]
    na, ns = 25, k // 25
    a1 = np.linspace(0.0, 0.25, (na + 1) // 2)
    a2 = np.linspace(0.75, 1.0, na // 2)
    a = np.concatenate([a1, a2])
    s = np.linspace(0.0, 1.0, ns)
    aa, ss = np.meshgrid(a, s)
    aa, ss = aa.ravel(), ss.ravel()
    pts = np.column_stack([aa * ss, (1.0 - aa) * ss, 1.0 - ss])
    if len(pts) < k:
        extra_s = np.linspace(0.0, 1.0, k - len(pts))
        extra = np.column_stack([0.25 * extra_s, 0.75 * extra_s, 1.0 - extra_s])
        pts = np.vstack([pts, extra])
    return pts[:k]


_PF_SAMPLERS = {
    "dtlz1": _pf_dtlz1,
    "dtlz2": _pf_circle, "dtlz3": _pf_circle, "dtlz4": _pf_circle,
    "dtlz5": _pf_circle, "dtlz6": _pf_circle,
    "dtlz7": _pf_dtlz7,
    "uf1": _pf_sqrt, "uf2": _pf_sqrt, "uf3": _pf_sqrt,
    "uf4": _pf_square,
    "uf5": _pf_uf5,
    "uf6": _pf_uf6,
    "uf7": _pf_line,
    "uf8": _pf_sphere, "uf10": _pf_sphere,
    "uf9": _pf_uf9,
}


# ---------------------------------------------------------------------------
# catalog and evaluation front-end
# ---------------------------------------------------------------------------

def _bounds_for(pid: str, m: int) -> tuple[np.ndarray, np.ndarray]:
    lower = np.zeros(DIM)
    upper = np.ones(DIM)
    if pid.startswith("dtlz") or pid == "uf3":
        return lower, upper
    if pid in ("uf1", "uf2", "uf5", "uf6", "uf7"):
        lower[1:] = -1.0
        return lower, upper
    if pid == "uf4":
        lower[1:] = -2.0
        upper[1:] = 2.0
        return lower, upper
    # uf8/uf9/uf10: first two position variables in [0,1], rest in [-2,2]
    lower[2:] = -2.0
    upper[2:] = 2.0
    return lower, upper


@lru_cache(maxsize=1)
def _catalog() -> tuple[ProblemSpec, ...]:
    specs = []
    for pid, code in _CODES.items():
        m = 3 if pid in ("uf8", "uf9", "uf10") else 2
        lower, upper = _bounds_for(pid, m)
        lower.setflags(write=False)
        upper.setflags(write=False)
        specs.append(ProblemSpec(
            id=pid, m=m, dim=DIM, lower=lower, upper=upper,
            pf_sampler=_PF_SAMPLERS[pid], code=code,
        ))
    return tuple(specs)


def catalog() -> list[ProblemSpec]:
    """All 17 benchmark problems in canonical order (dtlz1..7, uf1..10)."""
    return list(_catalog())


def lookup(pid: str) -> ProblemSpec:
    for spec in _catalog():
        if spec.id == pid:
            return spec
    raise KeyError(f"unknown problem id: {pid!r}")


def bounds(spec: ProblemSpec) -> tuple[np.ndarray, np.ndarray]:
    return spec.lower, spec.upper


def evaluate(spec: ProblemSpec, x: np.ndarray, counter: EvalCounter) -> tuple[float, ...]:
    """Evaluate one decision point; increments the counter by exactly 1."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (spec.dim,):
        raise ValueError(f"{spec.id} expects dimension {spec.dim}, got shape {x.shape}")
    if np.any(x < spec.lower) or np.any(x > spec.upper):
        raise ValueError(f"point outside the {spec.id} box bounds")
    out = np.empty(spec.m)
    _eval_raw(spec.code, x, out)
    counter.bump()
    return tuple(out)
