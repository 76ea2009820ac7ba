"""The MOEA/D-DE generational loop with pluggable resource allocation.

One run: initialize N incumbents (one per weight vector), then per
generation rescale objectives to [0,1] against the current population,
refresh strategy priorities, select subproblems, and walk the subproblems
in index order. A selected subproblem generates one candidate (DE step from
its incumbent with two population donors, clamp, polynomial mutation) and
spends one evaluation; a non-selected subproblem re-submits its current
incumbent at no cost. Either way the submission may replace up to nr worse
incumbents of its replacement pool (the T-neighborhood with probability
delta_p, otherwise the whole population), traversed in random order, with
strictly better scalarized value required. Replacements take effect
immediately, so later subproblems in the same generation see them.

Re-submitting incumbents lets solutions that already won one subproblem
spread to neighboring ones in generations where little new material is
produced; under partial update this recirculation is what keeps the
population moving between the sparse evaluation bursts.

Scalarization uses the signed weighted maximum max_j(lambda_j * s_j) over
scaled values with the reference point at the per-generation population
ideal (0 in the scaled frame). Values below the ideal count as
improvements; an absolute value there would repel exactly the candidates
that establish a new per-objective best. Weight vectors are used as given,
including exact zero coordinates: an edge subproblem ranks solutions by the
remaining objectives alone and ignores ties in the zero-weighted one.

The evaluation budget caps the whole run, counting initialization; a
generation halts before generating a candidate that would exceed it.
Indicator rows are logged after initialization and after every generation.

Random draw order per generation (the determinism contract):
selection consumes one uniform per subproblem (a single vectorized draw);
then per subproblem in index order: one uniform for the pool choice; for
selected subproblems two rejection-sampled donor indices and the polynomial
mutation draws; finally the Fisher-Yates shuffle of the replacement pool.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .decomposition import (NeighborTable, ScalingFrame, WeightSet,
                            neighborhoods, scale_objectives, sld_weights)
from .metrics import metric_frame
from .problems import EvalCounter, ProblemSpec, _eval_raw, lookup
from .resource_allocation import PriorityState, select_subproblems
from .variation import VariationParams, _polymut_inplace


@dataclass(frozen=True)
class EngineConfig:
    problem: str
    strategy: str = "full"
    ps: float = 1.0
    delta_t: int = 20
    budget: int = 30000
    T: int = 20
    delta_p: float = 0.9
    nr: int = 2
    variation: VariationParams = field(default_factory=VariationParams)
    h: int | None = None  # simplex-lattice granularity; default 349 (2 obj) / 25 (3 obj)
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.delta_p <= 1.0:
            raise ValueError("locality probability delta_p must lie in (0, 1]")
        if self.nr < 1:
            raise ValueError("replacement cap nr must be >= 1")
        if self.delta_t < 0:
            raise ValueError("warm-up length delta_t must be >= 0")
        if self.strategy == "ps" and not 0.0 < self.ps <= 1.0:
            raise ValueError("update probability ps must lie in (0, 1]")


@dataclass
class Population:
    """Per-subproblem incumbents with their raw objectives."""

    X: np.ndarray
    F: np.ndarray
    t: int
    counter: EvalCounter


@dataclass(frozen=True)
class RunLog:
    """Anytime log: one row after initialization, one per generation.

    `snapshots` holds the per-row non-dominated raw objective sets the
    indicator columns were computed from, so the hypervolume column can be
    re-expressed in a different scaling frame (see `with_hv_frame`).
    """

    generation: np.ndarray
    evaluations: np.ndarray
    hv: np.ndarray
    igd_scaled: np.ndarray
    igd_raw: np.ndarray
    ndom: np.ndarray
    snapshots: tuple[np.ndarray, ...] = ()

    def __len__(self) -> int:
        return len(self.generation)

    def with_hv_frame(self, ideal: np.ndarray, span: np.ndarray) -> "RunLog":
        """The same log with hv recomputed in the given scaling frame."""
        frame = ScalingFrame(ideal=np.asarray(ideal, dtype=np.float64),
                             span=np.asarray(span, dtype=np.float64))
        hv = np.array([_scaled_hv(frame.apply(nd)) for nd in self.snapshots])
        return RunLog(generation=self.generation, evaluations=self.evaluations,
                      hv=hv, igd_scaled=self.igd_scaled, igd_raw=self.igd_raw,
                      ndom=self.ndom, snapshots=self.snapshots)


def _scaled_hv(scaled_nd: np.ndarray) -> float:
    from .metrics import hypervolume
    return hypervolume(scaled_nd, np.ones(scaled_nd.shape[1]))


def _resolve(config: EngineConfig) -> tuple[ProblemSpec, int, int]:
    spec = lookup(config.problem)
    h = config.h if config.h is not None else (349 if spec.m == 2 else 25)
    n = math.comb(h + spec.m - 1, spec.m - 1)
    return spec, h, n


@njit(cache=True)
def _signed_g(w_row, s):
    g = -np.inf
    for o in range(s.shape[0]):
        v = w_row[o] * s[o]
        if v > g:
            g = v
    return g


@njit(cache=True)
def _generation(X, F, S, G, sel, wmat, nb, code, lower, upper, ideal, span,
                de_f, p_m, eta_m, delta_p, nr, remaining, rng):
    """One generation in place; returns evaluations consumed.

    S and G cache the scaled objectives and scalarized values of the
    incumbents in this generation's frame and are kept consistent with
    X and F across replacements.
    """
    n, dim = X.shape
    m = F.shape[1]
    T = nb.shape[1]
    y = np.empty(dim)
    fy = np.empty(m)
    sy = np.empty(m)
    perm = np.empty(n, dtype=np.int64)
    used = 0
    for i in range(n):
        if sel[i]:
            if used >= remaining:
                break  # budget exhausted: the generation stops here
            use_nb = rng.random() < delta_p
            while True:
                r1 = rng.integers(0, n)
                if r1 != i:
                    break
            while True:
                r2 = rng.integers(0, n)
                if r2 != i and r2 != r1:
                    break
            for d in range(dim):
                v = X[i, d] + de_f * (X[r1, d] - X[r2, d])
                if v < lower[d]:
                    v = lower[d]
                elif v > upper[d]:
                    v = upper[d]
                y[d] = v
            _polymut_inplace(y, p_m, eta_m, lower, upper, rng)
            _eval_raw(code, y, fy)
            used += 1
            for o in range(m):
                sy[o] = (fy[o] - ideal[o]) / span[o]
        else:
            use_nb = rng.random() < delta_p
            for d in range(dim):
                y[d] = X[i, d]
            for o in range(m):
                fy[o] = F[i, o]
                sy[o] = S[i, o]
        # replacement sweep over the pool in random order, capped at nr
        pool_size = T if use_nb else n
        for k in range(pool_size):
            perm[k] = k
        for k in range(pool_size - 1, 0, -1):
            swap = rng.integers(0, k + 1)
            tmp = perm[k]
            perm[k] = perm[swap]
            perm[swap] = tmp
        repl = 0
        for k in range(pool_size):
            j = nb[i, perm[k]] if use_nb else perm[k]
            gy = _signed_g(wmat[j], sy)
            if gy < G[j]:
                for d in range(dim):
                    X[j, d] = y[d]
                for o in range(m):
                    F[j, o] = fy[o]
                    S[j, o] = sy[o]
                G[j] = gy
                repl += 1
                if repl >= nr:
                    break
    return used


def initialize(config: EngineConfig, rng: np.random.Generator) -> Population:
    """Uniform sample of one incumbent per subproblem, all evaluated."""
    spec, _, n = _resolve(config)
    if config.budget < n:
        raise ValueError(
            f"budget {config.budget} cannot cover the {n} initialization evaluations")
    X = spec.lower + rng.random((n, spec.dim)) * (spec.upper - spec.lower)
    F = np.empty((n, spec.m))
    for i in range(n):
        _eval_raw(spec.code, X[i], F[i])
    return Population(X=X, F=F, t=0, counter=EvalCounter(n))


def mating_pool(i: int, neighbors: NeighborTable, n: int, delta_p: float,
                rng: np.random.Generator) -> np.ndarray:
    """The neighborhood of i with probability delta_p, else all indices."""
    if rng.random() < delta_p:
        return neighbors.indices[i]
    return np.arange(n, dtype=np.int64)


def replace(population: Population, pool: np.ndarray, y: np.ndarray,
            f_y: np.ndarray, nr: int, scaling: ScalingFrame,
            weights: np.ndarray, rng: np.random.Generator) -> int:
    """Let candidate y replace up to nr strictly worse incumbents of the pool.

    The pool is traversed in uniformly random order. Comparison is the
    signed weighted maximum in the given scaling frame against the pool
    members' current (possibly already replaced) incumbents. Returns the
    number of replacements performed.
    """
    sy = scaling.apply(np.asarray(f_y, dtype=np.float64)[None, :])[0]
    repl = 0
    for j in rng.permutation(pool):
        g_new = float(np.max(weights[j] * sy))
        s_old = scaling.apply(population.F[j][None, :])[0]
        g_old = float(np.max(weights[j] * s_old))
        if g_new < g_old:
            population.X[j] = np.asarray(y, dtype=np.float64)
            population.F[j] = np.asarray(f_y, dtype=np.float64)
            repl += 1
            if repl >= nr:
                break
    return repl


def iterate(population: Population, config: EngineConfig, weights: WeightSet,
            neighbors: NeighborTable, state: PriorityState,
            rng: np.random.Generator) -> Population:
    """Advance the population by one generation (in place)."""
    spec, _, n = _resolve(config)
    frame, S = scale_objectives(population.F)
    wmat = np.ascontiguousarray(weights.weights)
    G = (wmat * S).max(axis=1)
    u = state.update(population.t, G)
    sel = np.zeros(n, dtype=np.bool_)
    sel[select_subproblems(u, state.strategy, rng)] = True
    remaining = config.budget - population.counter.count
    span = np.where(frame.span > 0.0, frame.span, 1.0)
    used = _generation(
        population.X, population.F, np.ascontiguousarray(S), G, sel,
        wmat, neighbors.indices, spec.code, spec.lower, spec.upper,
        frame.ideal, span,
        config.variation.F, config.variation.p_m, config.variation.eta_m,
        config.delta_p, config.nr, remaining, rng)
    population.counter.bump(used)
    population.t += 1
    return population


def run(config: EngineConfig) -> tuple[RunLog, Population]:
    """One full run: initialize, iterate until the budget is consumed.

    The hypervolume column of the returned log is expressed in the run's
    own pooled frame (per-objective min/max over everything the log rows
    ever contained); use RunLog.with_hv_frame to re-express it, e.g. in a
    frame pooled over several runs being compared.
    """
    spec, h, n = _resolve(config)
    ws = sld_weights(spec.m, h)
    nb = neighborhoods(ws, config.T)
    state = PriorityState(strategy=config.strategy, n=n,
                          delta_t=config.delta_t, ps=config.ps)
    mf = metric_frame(config.problem)
    rng = np.random.default_rng(config.seed)

    population = initialize(config, rng)
    rows = [_log_row(population, mf)]
    while population.counter.count < config.budget and population.t < config.budget:
        iterate(population, config, ws, nb, state, rng)
        rows.append(_log_row(population, mf))

    snapshots = tuple(r[3] for r in rows)
    pooled = np.vstack(snapshots)
    lo = pooled.min(axis=0)
    span = pooled.max(axis=0) - lo
    log = RunLog(
        generation=np.array([r[0] for r in rows], dtype=np.int64),
        evaluations=np.array([r[1] for r in rows], dtype=np.int64),
        hv=np.zeros(len(rows)),
        igd_scaled=np.array([r[2][0] for r in rows]),
        igd_raw=np.array([r[2][1] for r in rows]),
        ndom=np.array([r[2][2] for r in rows]),
        snapshots=snapshots,
    ).with_hv_frame(lo, span)
    return log, population


def _log_row(population: Population, mf) -> tuple[int, int, tuple, np.ndarray]:
    from .metrics import _igd, _nd_mask

    pts = population.F
    mask = _nd_mask(np.ascontiguousarray(pts))
    nd = np.ascontiguousarray(pts[mask])
    scaled = np.ascontiguousarray((pts - mf.ideal) / mf.span)
    igd_scaled = float(_igd(mf.reference_scaled, scaled))
    igd_raw = float(_igd(mf.reference_raw, np.ascontiguousarray(pts)))
    return (population.t, population.counter.count,
            (igd_scaled, igd_raw, float(mask.mean())), nd)
