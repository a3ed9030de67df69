"""Shared machinery for the population optimizers.

All optimizers maximize a black-box objective over a box. They follow the
scikit-learn estimator conventions: hyperparameters are constructor
arguments stored verbatim (so ``get_params`` / ``set_params`` / ``clone``
work), validation happens in ``fit``, and results land in trailing-
underscore attributes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from sklearn.base import BaseEstimator

from ..exceptions import ObjectiveEvaluationError
from ..space import SearchSpace, as_search_space

Objective = Callable[[np.ndarray], float]
# callback(generation, positions, best_objective); generation 0 is the
# freshly evaluated initial population.
GenerationCallback = Callable[[int, np.ndarray, float], None]


@dataclass(eq=False)
class RunRecord:
    """Outcome of one seeded optimization run.

    `best_objective_per_generation` has one entry per generation plus a
    leading entry for the initial population, and is non-decreasing
    because the best-so-far solution is tracked elitically. The step
    counters are populated by optimizers that distinguish global from
    local moves, and stay None otherwise.
    """

    algorithm: str
    seed: int
    best_objective_per_generation: np.ndarray
    final_best_position: np.ndarray
    final_best_objective: float
    evaluation_count: int
    n_global_steps: Optional[int] = None
    n_local_steps: Optional[int] = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, RunRecord):
            return NotImplemented
        return (
            self.algorithm == other.algorithm
            and self.seed == other.seed
            and np.array_equal(
                self.best_objective_per_generation, other.best_objective_per_generation
            )
            and np.array_equal(self.final_best_position, other.final_best_position)
            and self.final_best_objective == other.final_best_objective
            and self.evaluation_count == other.evaluation_count
            and self.n_global_steps == other.n_global_steps
            and self.n_local_steps == other.n_local_steps
        )


def evaluate_objective(objective: Objective, x: np.ndarray) -> float:
    """Call the objective, attaching the position to any failure."""
    try:
        value = float(objective(x))
    except ObjectiveEvaluationError:
        raise
    except Exception as exc:
        raise ObjectiveEvaluationError(
            f"objective evaluation failed at position {x.tolist()}: {exc}", position=x
        ) from exc
    if not np.isfinite(value):
        raise ObjectiveEvaluationError(
            f"objective returned non-finite value {value!r} at position {x.tolist()}",
            position=x,
        )
    return value


class BaseOptimizer(BaseEstimator):
    """Template for seeded, bounded, population-based maximizers."""

    population_size: int
    generations: int
    random_state: Optional[int]

    algorithm_name: str = "base"

    def fit(self, objective: Objective, bounds, callback: GenerationCallback | None = None):
        """Run the optimizer on `objective` over `bounds`.

        Parameters
        ----------
        objective : callable
            Maps a position vector to a finite float; higher is better.
        bounds : SearchSpace or array-like
            Box constraints, see `as_search_space`.
        callback : callable, optional
            Called after the initial evaluation and after every
            generation with (generation, positions, best_objective).

        Returns self, with `best_position_`, `best_objective_`,
        `record_`, and `n_evaluations_` set.
        """
        space = as_search_space(bounds)
        self._validate_common()
        self._validate_params()
        seed = self._resolve_seed()
        rng = np.random.default_rng(seed)
        record = self._run(objective, space, rng, seed, callback)
        self.record_ = record
        self.best_position_ = record.final_best_position
        self.best_objective_ = record.final_best_objective
        self.n_evaluations_ = record.evaluation_count
        return self

    def _resolve_seed(self) -> int:
        if self.random_state is None:
            return int(np.random.SeedSequence().generate_state(1)[0])
        seed = int(self.random_state)
        if seed < 0:
            raise ValueError(f"random_state must be a nonnegative integer, got {seed}")
        return seed

    def _validate_common(self):
        if not (isinstance(self.population_size, (int, np.integer)) and self.population_size >= 1):
            raise ValueError(f"population_size must be a positive integer, got {self.population_size!r}")
        if not (isinstance(self.generations, (int, np.integer)) and self.generations >= 0):
            raise ValueError(f"generations must be a nonnegative integer, got {self.generations!r}")

    def _validate_params(self):
        """Algorithm-specific hyperparameter checks; override as needed."""

    def _run(self, objective, space, rng, seed, callback) -> RunRecord:
        raise NotImplementedError

    def _init_population(self, objective, space: SearchSpace, rng) -> tuple[np.ndarray, np.ndarray]:
        positions = space.sample(rng, self.population_size)
        values = np.array([evaluate_objective(objective, x) for x in positions])
        return positions, values
