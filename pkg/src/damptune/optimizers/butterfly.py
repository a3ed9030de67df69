"""Fragrance-guided population search.

Candidates ("butterflies") emit a fragrance f = c * I**a computed from a
nonnegative stimulus intensity I tied to their objective value. Each
generation every butterfly either steps toward the best-known solution
(global move, chosen with the switch probability) or performs a local
random walk against two randomly picked flock members. Moves are always
accepted; the best-so-far solution is tracked separately and never lost.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ..exceptions import NegativeIntensityError
from ..space import SearchSpace
from .base import BaseOptimizer, RunRecord, evaluate_objective

INTENSITY_FLOOR = 1e-12


def fragrance(intensity, sensory_modality: float, power_exponent: float):
    """Perceived fragrance c * I**a of one or many stimulus intensities."""
    intensity = np.asarray(intensity, dtype=float)
    if np.any(intensity < 0):
        raise NegativeIntensityError("stimulus intensity must be nonnegative")
    if not sensory_modality > 0:
        raise ValueError(f"sensory modality must be positive, got {sensory_modality}")
    if not 0 < power_exponent <= 1:
        raise ValueError(f"power exponent must lie in (0, 1], got {power_exponent}")
    out = sensory_modality * intensity**power_exponent
    return float(out) if out.ndim == 0 else out


def stimulus_intensities(objective_values) -> np.ndarray:
    """Map raw objective values to strictly positive intensities.

    Objective values may be negative (unstable designs), but the fragrance
    model needs I >= 0. Shifting by (population minimum - 1), recomputed
    every generation, keeps intensities >= 1 and preserves the
    within-generation ordering, so the best butterfly stays the most
    fragrant.
    """
    values = np.atleast_1d(np.asarray(objective_values, dtype=float))
    if values.size == 0:
        raise ValueError("population objective values must be nonempty")
    floor_shift = values.min() - 1.0
    return np.maximum(INTENSITY_FLOOR, values - floor_shift)


def global_search_step(
    x: np.ndarray,
    g_star: np.ndarray,
    frag: float,
    rng: np.random.Generator,
    space: SearchSpace,
) -> np.ndarray:
    """Move toward the best-known solution: x + (r^2 * g_star - x) * f.

    One fresh r ~ U[0,1] per step, squared; the result is clamped into
    the box.
    """
    r = rng.random()
    return space.clip(x + (r * r * g_star - x) * frag)


def local_search_step(
    x: np.ndarray,
    x_j: np.ndarray,
    x_k: np.ndarray,
    frag: float,
    rng: np.random.Generator,
    space: SearchSpace,
) -> np.ndarray:
    """Local random walk against two flock members: x + (r^2 * x_j - x_k) * f."""
    r = rng.random()
    return space.clip(x + (r * r * x_j - x_k) * frag)


class ButterflyOptimizer(BaseOptimizer):
    """Butterfly-style global/local fragrance search.

    Parameters
    ----------
    sensory_modality : float, default 0.01
        Scaling constant c of the fragrance model, in (0, 1].
    power_exponent : float, default 0.1
        Absorption exponent a in (0, 1]; a = 1 means fragrance is sensed
        undiminished.
    switch_probability : float, default 0.8
        Per-move probability of a global step toward the best solution
        instead of a local random walk.
    population_size : int, default 50
    generations : int, default 200
    random_state : int or None
        Seed for the run-owned generator; fixed seeds give bit-identical
        run records.
    """

    algorithm_name = "boa"

    def __init__(
        self,
        sensory_modality: float = 0.01,
        power_exponent: float = 0.1,
        switch_probability: float = 0.8,
        population_size: int = 50,
        generations: int = 200,
        random_state: Optional[int] = None,
    ):
        self.sensory_modality = sensory_modality
        self.power_exponent = power_exponent
        self.switch_probability = switch_probability
        self.population_size = population_size
        self.generations = generations
        self.random_state = random_state

    def _validate_params(self):
        if not 0 < self.sensory_modality <= 1:
            raise ValueError(f"sensory_modality must lie in (0, 1], got {self.sensory_modality}")
        if not 0 < self.power_exponent <= 1:
            raise ValueError(f"power_exponent must lie in (0, 1], got {self.power_exponent}")
        if not 0 <= self.switch_probability <= 1:
            raise ValueError(
                f"switch_probability must lie in [0, 1], got {self.switch_probability}"
            )

    def _run(self, objective, space, rng, seed, callback) -> RunRecord:
        pop = self.population_size
        positions, values = self._init_population(objective, space, rng)

        best_i = int(np.argmax(values))
        best_pos = positions[best_i].copy()
        best_val = float(values[best_i])
        trace = [best_val]
        n_global = 0
        n_local = 0
        if callback is not None:
            callback(0, positions.copy(), best_val)

        for gen in range(self.generations):
            frags = fragrance(
                stimulus_intensities(values), self.sensory_modality, self.power_exponent
            )
            for i in range(pop):
                if rng.random() < self.switch_probability:
                    new = global_search_step(positions[i], best_pos, frags[i], rng, space)
                    n_global += 1
                else:
                    j = int(rng.integers(pop))
                    k = int(rng.integers(pop))
                    new = local_search_step(
                        positions[i], positions[j], positions[k], frags[i], rng, space
                    )
                    n_local += 1
                value = evaluate_objective(objective, new)
                positions[i] = new
                values[i] = value
                if value > best_val:
                    best_val = value
                    best_pos = new.copy()
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
            n_global_steps=n_global,
            n_local_steps=n_local,
        )
