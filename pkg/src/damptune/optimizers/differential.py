"""Differential evolution baseline (rand/1 mutation, binomial crossover).

Per target: mutant = x_r1 + F * (x_r2 - x_r3) with three distinct donors,
out-of-box components repaired to the midpoint between the target and the
violated bound, binomial crossover with one forced dimension, then greedy
one-to-one selection. The population update is synchronous.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..exceptions import PopulationTooSmallError
from .base import BaseOptimizer, RunRecord, evaluate_objective


class DifferentialEvolution(BaseOptimizer):
    """DE maximizer over a box.

    Parameters
    ----------
    crossover_rate : float, default 0.9
        Binomial crossover probability CR.
    differential_weight : float, default 0.5
        Scale factor F on the donor difference vector.
    population_size : int, default 50
        Must be at least 4 so three distinct donors exist per target.
    generations : int, default 200
    random_state : int or None
    """

    algorithm_name = "de"

    def __init__(
        self,
        crossover_rate: float = 0.9,
        differential_weight: float = 0.5,
        population_size: int = 50,
        generations: int = 200,
        random_state: Optional[int] = None,
    ):
        self.crossover_rate = crossover_rate
        self.differential_weight = differential_weight
        self.population_size = population_size
        self.generations = generations
        self.random_state = random_state

    def _validate_params(self):
        if not 0 <= self.crossover_rate <= 1:
            raise ValueError(f"crossover_rate must lie in [0, 1], got {self.crossover_rate}")
        if not np.isfinite(self.differential_weight):
            raise ValueError(f"differential_weight must be finite, got {self.differential_weight}")
        if self.population_size < 4:
            raise PopulationTooSmallError(
                f"population_size must be at least 4, got {self.population_size}"
            )

    @staticmethod
    def _donors(pop: int, target: int, rng) -> tuple[int, int, int]:
        r1 = target
        while r1 == target:
            r1 = int(rng.integers(pop))
        r2 = target
        while r2 in (target, r1):
            r2 = int(rng.integers(pop))
        r3 = target
        while r3 in (target, r1, r2):
            r3 = int(rng.integers(pop))
        return r1, r2, r3

    def _run(self, objective, space, rng, seed, callback) -> RunRecord:
        pop = self.population_size
        dim = space.dimension
        cr = self.crossover_rate
        f = self.differential_weight
        positions, values = self._init_population(objective, space, rng)

        best_i = int(np.argmax(values))
        best_pos = positions[best_i].copy()
        best_val = float(values[best_i])
        trace = [best_val]
        if callback is not None:
            callback(0, positions.copy(), best_val)

        for gen in range(self.generations):
            next_positions = positions.copy()
            next_values = values.copy()
            for i in range(pop):
                r1, r2, r3 = self._donors(pop, i, rng)
                mutant = positions[r1] + f * (positions[r2] - positions[r3])
                low = mutant < space.lower
                if np.any(low):
                    mutant[low] = 0.5 * (space.lower[low] + positions[i][low])
                high = mutant > space.upper
                if np.any(high):
                    mutant[high] = 0.5 * (space.upper[high] + positions[i][high])

                j_rand = int(rng.integers(dim))
                mask = rng.random(dim) <= cr
                mask[j_rand] = True
                trial = np.where(mask, mutant, positions[i])

                value = evaluate_objective(objective, trial)
                if value >= values[i]:
                    next_positions[i] = trial
                    next_values[i] = value
                    if value > best_val:
                        best_val = value
                        best_pos = trial.copy()
            positions = next_positions
            values = next_values
            trace.append(best_val)
            if callback is not None:
                callback(gen + 1, positions.copy(), best_val)

        return RunRecord(
            algorithm=self.algorithm_name,
            seed=seed,
            best_objective_per_generation=np.asarray(trace),
            final_best_position=best_pos,
            final_best_objective=best_val,
            evaluation_count=pop * (self.generations + 1),
        )
