"""Decomposition-based multi-objective optimization with resource
allocation strategies, plus the benchmark experiment harness around it."""

from .decomposition import (NeighborTable, ScalingFrame, WeightSet,
                            guarded_weights, neighborhoods, scale_objectives,
                            sld_weights, tchebycheff)
from .engine import (EngineConfig, Population, RunLog, initialize, iterate,
                     mating_pool, replace, run)
from .metrics import (FrontApproximation, hypervolume, igd,
                      nondominated_filter, ndom_ratio, reference_front,
                      scale_for_metrics)
from .problems import EvalCounter, ProblemSpec, bounds, catalog, evaluate, lookup
from .resource_allocation import (ImprovementHistory, PriorityState,
                                  priorities_ps, priorities_ri,
                                  select_subproblems)
from .stats import (ComparisonReport, SampleGroup, compare_all, hommel_adjust,
                    wilcoxon_rank_sum)
from .variation import (VariationParams, de_mutation, polynomial_mutation,
                        repair_clamp)

__version__ = "0.1.0"

__all__ = [
    "EngineConfig", "Population", "RunLog", "initialize", "iterate",
    "mating_pool", "replace", "run",
    "ProblemSpec", "EvalCounter", "catalog", "lookup", "evaluate", "bounds",
    "WeightSet", "NeighborTable", "ScalingFrame", "sld_weights",
    "neighborhoods", "scale_objectives", "tchebycheff", "guarded_weights",
    "VariationParams", "de_mutation", "polynomial_mutation", "repair_clamp",
    "PriorityState", "ImprovementHistory", "priorities_ps", "priorities_ri",
    "select_subproblems",
    "FrontApproximation", "nondominated_filter", "ndom_ratio", "hypervolume",
    "igd", "scale_for_metrics", "reference_front",
    "SampleGroup", "ComparisonReport", "wilcoxon_rank_sum", "hommel_adjust",
    "compare_all",
]
