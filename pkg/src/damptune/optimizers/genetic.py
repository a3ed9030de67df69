"""Real-coded genetic algorithm baseline.

Generational scheme: binary tournament selection, blend (BLX-alpha)
crossover, per-gene uniform mutation that resamples within the box, and
one elite carried over unchanged, so each generation costs
population_size - 1 objective evaluations after the initial sweep.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .base import BaseOptimizer, RunRecord, evaluate_objective


class GeneticAlgorithm(BaseOptimizer):
    """Elitist real-coded GA over a box.

    Parameters
    ----------
    mutation_probability : float, default 0.05
        Per-gene chance of resampling the gene uniformly within bounds.
    crossover_probability : float, default 0.9
        Chance a child is blended from both parents rather than copied
        from the first.
    crossover_coefficient : float, default 0.5
        Blend margin alpha: each child gene is drawn uniformly from the
        interval spanned by the parent genes, extended by alpha times the
        parent gap on both sides. Keeps exploration alive where plain
        midpoint averaging would collapse the population.
    population_size : int, default 50
    generations : int, default 200
    random_state : int or None
    """

    algorithm_name = "ga"

    def __init__(
        self,
        mutation_probability: float = 0.05,
        crossover_probability: float = 0.9,
        crossover_coefficient: float = 0.5,
        population_size: int = 50,
        generations: int = 200,
        random_state: Optional[int] = None,
    ):
        self.mutation_probability = mutation_probability
        self.crossover_probability = crossover_probability
        self.crossover_coefficient = crossover_coefficient
        self.population_size = population_size
        self.generations = generations
        self.random_state = random_state

    def _validate_params(self):
        for label, v in (
            ("mutation_probability", self.mutation_probability),
            ("crossover_probability", self.crossover_probability),
        ):
            if not 0 <= v <= 1:
                raise ValueError(f"{label} must lie in [0, 1], got {v}")
        if not 0 <= self.crossover_coefficient <= 1:
            raise ValueError(
                f"crossover_coefficient must lie in [0, 1], got {self.crossover_coefficient}"
            )
        if self.population_size < 2:
            raise ValueError("population_size must be at least 2 for selection")

    def _tournament(self, values: np.ndarray, rng) -> int:
        pop = values.shape[0]
        i = int(rng.integers(pop))
        j = int(rng.integers(pop))
        return i if values[i] >= values[j] else j

    def _run(self, objective, space, rng, seed, callback) -> RunRecord:
        pop = self.population_size
        dim = space.dimension
        positions, values = self._init_population(objective, space, rng)

        best_i = int(np.argmax(values))
        best_pos = positions[best_i].copy()
        best_val = float(values[best_i])
        trace = [best_val]
        evaluations = pop
        if callback is not None:
            callback(0, positions.copy(), best_val)

        for gen in range(self.generations):
            elite_i = int(np.argmax(values))
            next_positions = np.empty_like(positions)
            next_values = np.empty_like(values)
            next_positions[0] = positions[elite_i]
            next_values[0] = values[elite_i]

            for child_i in range(1, pop):
                p1 = self._tournament(values, rng)
                p2 = self._tournament(values, rng)
                if rng.random() < self.crossover_probability:
                    alpha = self.crossover_coefficient
                    lo = np.minimum(positions[p1], positions[p2])
                    hi = np.maximum(positions[p1], positions[p2])
                    margin = alpha * (hi - lo)
                    child = (lo - margin) + rng.random(dim) * ((hi - lo) + 2.0 * margin)
                else:
                    child = positions[p1].copy()
                for d in range(dim):
                    if rng.random() < self.mutation_probability:
                        child[d] = space.lower[d] + rng.random() * (
                            space.upper[d] - space.lower[d]
                        )
                child = space.clip(child)
                next_positions[child_i] = child
                next_values[child_i] = evaluate_objective(objective, child)
                evaluations += 1

            positions = next_positions
            values = next_values
            gen_best = int(np.argmax(values))
            if values[gen_best] > best_val:
                best_val = float(values[gen_best])
                best_pos = positions[gen_best].copy()
            trace.append(best_val)
            if callback is not None:
                callback(gen + 1, positions.copy(), best_val)

        return RunRecord(
            algorithm=self.algorithm_name,
            seed=seed,
            best_objective_per_generation=np.asarray(trace),
            final_best_position=best_pos,
            final_best_objective=best_val,
            evaluation_count=evaluations,
        )
