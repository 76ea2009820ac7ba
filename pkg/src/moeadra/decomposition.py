"""Decomposition machinery: SLD weight vectors, neighborhoods, per-iteration
objective scaling and the Weighted Tchebycheff scalarization.

The reference point z of the scalarization is the origin: objectives are
rescaled to [0,1] against the current population every iteration, so the
population ideal is 0 by construction.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WeightSet:
    """Simplex-lattice weight vectors; one subproblem per weight."""

    weights: np.ndarray  # (N, m)
    h: int

    def __len__(self) -> int:
        return len(self.weights)


@dataclass(frozen=True)
class NeighborTable:
    """Per-subproblem index sets of the T nearest weight vectors."""

    indices: np.ndarray  # (N, T), each row sorted by distance then index
    T: int


@dataclass(frozen=True)
class ScalingFrame:
    """Per-objective affine map sending the population min to 0, max to 1."""

    ideal: np.ndarray  # column minima
    span: np.ndarray   # column max - min, 0 where degenerate

    def apply(self, raw: np.ndarray) -> np.ndarray:
        span = np.where(self.span > 0.0, self.span, 1.0)
        scaled = (raw - self.ideal) / span
        # a degenerate column carries no ordering information: map it to 0
        return np.where(self.span > 0.0, scaled, 0.0)


def sld_weights(m: int, h: int) -> WeightSet:
    """All weight vectors with coordinates in {0, 1/h, ..., 1} summing to 1."""
    if m < 2:
        raise ValueError("need at least two objectives")
    if h < 1:
        raise ValueError("granularity h must be >= 1")
    if m == 2:
        first = np.arange(h + 1) / h
        w = np.column_stack([first, 1.0 - first])
    elif m == 3:
        rows = [(i / h, j / h, (h - i - j) / h)
                for i in range(h + 1) for j in range(h + 1 - i)]
        w = np.array(rows)
    else:
        def rec(left, budget):
            if left == 1:
                return [(budget,)]
            return [(i,) + tail for i in range(budget + 1)
                    for tail in rec(left - 1, budget - i)]
        w = np.array(rec(m, h), dtype=float) / h
    expected = math.comb(h + m - 1, m - 1)
    assert len(w) == expected
    return WeightSet(weights=w, h=h)


def neighborhoods(ws: WeightSet, T: int) -> NeighborTable:
    """The T nearest weights (self included) per subproblem, ties to lower index."""
    n = len(ws)
    if T > n:
        raise ValueError(f"neighborhood size {T} exceeds population size {n}")
    d = np.linalg.norm(ws.weights[:, None, :] - ws.weights[None, :, :], axis=2)
    order = np.argsort(d, axis=1, kind="stable")  # stable: equal distances keep index order
    return NeighborTable(indices=order[:, :T].astype(np.int64), T=T)


def scale_objectives(raw: np.ndarray) -> tuple[ScalingFrame, np.ndarray]:
    raw = np.asarray(raw, dtype=np.float64)
    if raw.ndim != 2 or len(raw) == 0:
        raise ValueError("need a non-empty population objective matrix")
    ideal = raw.min(axis=0)
    span = raw.max(axis=0) - ideal
    frame = ScalingFrame(ideal=ideal, span=span)
    return frame, frame.apply(raw)


def tchebycheff(fscaled: np.ndarray, lam: np.ndarray, z: np.ndarray | None = None) -> float:
    """Weighted Tchebycheff value max_j lam_j * |f_j - z_j| (z defaults to 0)."""
    fscaled = np.asarray(fscaled, dtype=np.float64)
    lam = np.asarray(lam, dtype=np.float64)
    diff = np.abs(fscaled if z is None else fscaled - np.asarray(z, dtype=np.float64))
    return float(np.max(lam * diff))


def guarded_weights(weights: np.ndarray, floor: float = 1e-6) -> np.ndarray:
    """Replace zero weight coordinates by a small floor and renormalize.

    Subproblems with a zero coordinate would otherwise ignore that objective
    entirely under the Tchebycheff scalarization.
    """
    w = np.where(weights == 0.0, floor, weights)
    return w / w.sum(axis=-1, keepdims=True)
