"""Candidate generation: DE differential mutation, bounded polynomial
mutation and clamp repair.

The stack is applied in this order: differential step from the incumbent,
clamp into the box, polynomial mutation (which requires an in-bounds input),
final clamp. The differential applies to every coordinate; there is no
crossover rate.
"""

from dataclasses import dataclass

import numpy as np
from numba import njit


@dataclass(frozen=True)
class VariationParams:
    F: float = 0.25
    eta_m: float = 20.0
    p_m: float = 0.01

    def __post_init__(self):
        if self.F <= 0:
            raise ValueError("DE scale factor F must be positive")
        if self.eta_m < 0:
            raise ValueError("distribution index eta_m must be >= 0")
        if not 0.0 <= self.p_m <= 1.0:
            raise ValueError("mutation probability p_m must lie in [0, 1]")


@njit(cache=True)
def _clamp_inplace(y, lower, upper):
    for j in range(y.shape[0]):
        if y[j] < lower[j]:
            y[j] = lower[j]
        elif y[j] > upper[j]:
            y[j] = upper[j]


@njit(cache=True)
def _polymut_inplace(y, p_m, eta_m, lower, upper, rng):
    # bounded polynomial mutation; one probability draw per coordinate,
    # a second draw only for coordinates that mutate
    mut_pow = 1.0 / (eta_m + 1.0)
    for j in range(y.shape[0]):
        if rng.random() >= p_m:
            continue
        width = upper[j] - lower[j]
        if width <= 0.0:
            continue
        u = rng.random()
        if u <= 0.5:
            d1 = (y[j] - lower[j]) / width
            val = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta_m + 1.0)
            dq = val ** mut_pow - 1.0
        else:
            d2 = (upper[j] - y[j]) / width
            val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta_m + 1.0)
            dq = 1.0 - val ** mut_pow
        y[j] += dq * width
        if y[j] < lower[j]:
            y[j] = lower[j]
        elif y[j] > upper[j]:
            y[j] = upper[j]


def de_mutation(x_base: np.ndarray, x_r1: np.ndarray, x_r2: np.ndarray, F: float) -> np.ndarray:
    """Differential step y = x_base + F * (x_r1 - x_r2); no bound repair."""
    return np.asarray(x_base, dtype=np.float64) + F * (
        np.asarray(x_r1, dtype=np.float64) - np.asarray(x_r2, dtype=np.float64))


def polynomial_mutation(y, p_m, eta_m, bounds, rng) -> np.ndarray:
    lower, upper = bounds
    y = np.array(y, dtype=np.float64)
    lower = np.asarray(lower, dtype=np.float64)
    upper = np.asarray(upper, dtype=np.float64)
    if np.any(y < lower) or np.any(y > upper):
        raise ValueError("polynomial mutation input must already lie in the box")
    _polymut_inplace(y, p_m, eta_m, lower, upper, rng)
    return y


def repair_clamp(y, bounds) -> np.ndarray:
    lower, upper = bounds
    return np.clip(np.asarray(y, dtype=np.float64), lower, upper)
