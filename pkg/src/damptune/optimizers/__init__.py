from .base import BaseOptimizer, RunRecord, evaluate_objective
from .butterfly import (
    ButterflyOptimizer,
    fragrance,
    global_search_step,
    local_search_step,
    stimulus_intensities,
)
from .differential import DifferentialEvolution
from .genetic import GeneticAlgorithm

__all__ = [
    "BaseOptimizer",
    "ButterflyOptimizer",
    "DifferentialEvolution",
    "GeneticAlgorithm",
    "RunRecord",
    "evaluate_objective",
    "fragrance",
    "global_search_step",
    "local_search_step",
    "stimulus_intensities",
]
