"""Statistical comparison protocol: pairwise two-sided Wilcoxon rank-sum
tests over all group pairs, jointly Hommel-adjusted, with superiority
direction taken from group medians.
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.stats import mannwhitneyu
from statsmodels.stats.multitest import multipletests

APPROX_EQUAL = "≈"


@dataclass(frozen=True)
class SampleGroup:
    """Per-run indicator values of one strategy or ps level."""

    label: str
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or len(vals) == 0:
            raise ValueError("sample group needs a non-empty value vector")
        if not np.all(np.isfinite(vals)):
            raise ValueError("sample group contains non-finite values")


@dataclass(frozen=True)
class PairComparison:
    label_a: str
    label_b: str
    p_raw: float
    p_adjusted: float
    median_a: float
    median_b: float
    better: str  # winning label, or "≈" when not significant


@dataclass(frozen=True)
class ComparisonReport:
    labels: tuple[str, ...]
    indicator_direction: str  # "higher" or "lower" is better
    pairs: tuple[PairComparison, ...]

    def rows(self) -> list[dict]:
        return [
            {"a": p.label_a, "b": p.label_b, "p_raw": p.p_raw,
             "p_adjusted": p.p_adjusted, "median_a": p.median_a,
             "median_b": p.median_b, "better": p.better}
            for p in self.pairs
        ]


def wilcoxon_rank_sum(a, b) -> float:
    """Two-sided rank-sum p-value.

    Exact permutation distribution for tie-free samples with at most 20
    values in total; otherwise the normal approximation with midranks and
    continuity correction.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if len(a) == 0 or len(b) == 0:
        raise ValueError("both samples must be non-empty")
    pooled = np.concatenate([a, b])
    tie_free = len(np.unique(pooled)) == len(pooled)
    if tie_free and len(pooled) <= 20:
        p = mannwhitneyu(a, b, alternative="two-sided", method="exact").pvalue
    elif np.all(pooled == pooled[0]):
        p = 1.0  # no variation at all: nothing to distinguish
    else:
        p = mannwhitneyu(a, b, alternative="two-sided", method="asymptotic",
                         use_continuity=True).pvalue
    return float(min(max(p, 0.0), 1.0))


def hommel_adjust(pvalues) -> np.ndarray:
    """Hommel step-up adjusted p-values, clipped to 1."""
    p = np.asarray(pvalues, dtype=np.float64)
    if p.ndim != 1:
        raise ValueError("expected a flat vector of p-values")
    if len(p) == 0:
        return p.copy()
    if np.any((p < 0.0) | (p > 1.0)):
        raise ValueError("p-values must lie in [0, 1]")
    return multipletests(p, method="hommel")[1]


def compare_all(groups, indicator_direction: str = "higher",
                alpha: float = 0.05) -> ComparisonReport:
    """All-vs-all rank-sum tests with joint Hommel adjustment.

    indicator_direction says whether higher or lower values are better
    (hypervolume vs IGD); the winner of each significant pair is the group
    with the better median, pairs with adjusted p >= alpha are marked "≈".
    """
    groups = [g if isinstance(g, SampleGroup) else SampleGroup(*g) for g in groups]
    if len(groups) < 2:
        raise ValueError("need at least two groups to compare")
    if indicator_direction not in ("higher", "lower"):
        raise ValueError("indicator_direction must be 'higher' or 'lower'")
    idx_pairs = list(combinations(range(len(groups)), 2))
    raw = np.array([
        wilcoxon_rank_sum(groups[i].values, groups[j].values)
        for i, j in idx_pairs
    ])
    adjusted = hommel_adjust(raw)
    pairs = []
    for (i, j), p_raw, p_adj in zip(idx_pairs, raw, adjusted):
        med_a = float(np.median(groups[i].values))
        med_b = float(np.median(groups[j].values))
        if p_adj >= alpha or med_a == med_b:
            better = APPROX_EQUAL
        elif (med_a > med_b) == (indicator_direction == "higher"):
            better = groups[i].label
        else:
            better = groups[j].label
        pairs.append(PairComparison(
            label_a=groups[i].label, label_b=groups[j].label,
            p_raw=float(p_raw), p_adjusted=float(p_adj),
            median_a=med_a, median_b=med_b, better=better))
    return ComparisonReport(
        labels=tuple(g.label for g in groups),
        indicator_direction=indicator_direction,
        pairs=tuple(pairs))
