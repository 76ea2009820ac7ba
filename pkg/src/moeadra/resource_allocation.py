"""Priority values and subproblem selection for the three resource
allocation strategies: full update, random partial update (ps) and
relative improvement (ri).

Every strategy starts with a warm-up of delta_t generations in which all
priorities are 1 and every subproblem is selected. After warm-up, ps keeps
a constant update probability, while ri derives priorities from the decay
of each subproblem's scalarized value over the last delta_t generations.
"""

from dataclasses import dataclass, field

import numpy as np

STRATEGIES = ("full", "ps", "ri")

_EPS = 1e-50


@dataclass
class ImprovementHistory:
    """Ring buffer of per-generation scalarized incumbent values.

    Retains delta_t + 1 generations so that the value from exactly delta_t
    generations ago stays available alongside the current one.
    """

    n: int
    delta_t: int
    _buf: np.ndarray = field(init=False)
    pushes: int = field(init=False, default=0)

    def __post_init__(self):
        self._buf = np.zeros((self.delta_t + 1, self.n))

    def push(self, values: np.ndarray) -> None:
        if values.shape != (self.n,):
            raise ValueError("scalarized value vector has the wrong length")
        self._buf[self.pushes % len(self._buf)] = values
        self.pushes += 1

    def latest(self) -> np.ndarray:
        return self._buf[(self.pushes - 1) % len(self._buf)]

    def lagged(self) -> np.ndarray:
        """Values pushed delta_t generations before the latest push."""
        if self.pushes <= self.delta_t:
            raise ValueError("history does not reach back delta_t generations yet")
        return self._buf[(self.pushes - 1 - self.delta_t) % len(self._buf)]


@dataclass
class PriorityState:
    """Per-run strategy state: priorities plus what they are derived from."""

    strategy: str
    n: int
    delta_t: int
    ps: float = 1.0
    t: int = 0
    u: np.ndarray = field(init=False)
    history: ImprovementHistory | None = field(init=False, default=None)

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.strategy == "ps" and not 0.0 < self.ps <= 1.0:
            raise ValueError("update probability ps must lie in (0, 1]")
        self.u = np.ones(self.n)
        if self.strategy == "ri":
            self.history = ImprovementHistory(self.n, self.delta_t)

    def update(self, t: int, scalarized: np.ndarray) -> np.ndarray:
        """Refresh priorities for generation t given current scalarized values."""
        self.t = t
        if self.strategy == "ri":
            self.history.push(scalarized)
            self.u = priorities_ri(self.history, t, self.delta_t)
        elif self.strategy == "ps":
            self.u = priorities_ps(t, self.delta_t, self.ps, self.n)
        else:
            self.u = priorities_ps(t, self.delta_t, 1.0, self.n)
        return self.u


def priorities_ps(t: int, delta_t: int, ps: float, n: int) -> np.ndarray:
    """All-ones during warm-up, the constant ps afterwards."""
    if not 0.0 < ps <= 1.0:
        raise ValueError("update probability ps must lie in (0, 1]")
    if t < delta_t:
        return np.ones(n)
    return np.full(n, ps)


def priorities_ri(history: ImprovementHistory, t: int, delta_t: int) -> np.ndarray:
    """Relative improvement of the scalarized value over the last delta_t
    generations, clamped to [0, 1]; all-ones during warm-up."""
    if t < delta_t or history.pushes <= delta_t:
        return np.ones(history.n)
    f_old = history.lagged()
    f_new = history.latest()
    u = (f_old - f_new) / np.maximum(f_old, _EPS)
    return np.clip(u, 0.0, 1.0)


def select_subproblems(u: np.ndarray, strategy: str, rng: np.random.Generator) -> np.ndarray:
    """Indices selected for variation this generation.

    full/ps: index i is included independently with probability u_i. ri:
    priorities are normalized against the current maximum so the most
    improving subproblem is always selected and zero-improvement ones stay
    reachable through the epsilon floor.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    u = np.asarray(u, dtype=np.float64)
    r = rng.random(len(u))
    if strategy == "ri":
        p = (u + _EPS) / (u.max() + _EPS)
        return np.flatnonzero(r < p)
    return np.flatnonzero(r < u)
