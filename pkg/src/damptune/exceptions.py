"""Exception types shared across the package."""

from __future__ import annotations

import numpy as np


class DamptuneError(Exception):
    """Base class for all errors raised by this package."""


class NonSquareMatrixError(DamptuneError, ValueError):
    """A square matrix was required but rows != cols."""


class ConvergenceFailure(DamptuneError, RuntimeError):
    """The eigenvalue iteration did not converge within its budget."""


class InvalidParamsError(DamptuneError, ValueError):
    """Controller parameters produce an invalid closed-loop matrix."""


class ZeroEigenvalueError(DamptuneError, ArithmeticError):
    """Damping ratio is undefined for an exactly zero eigenvalue."""


class NegativeIntensityError(DamptuneError, ValueError):
    """Stimulus intensity must be nonnegative."""


class PopulationTooSmallError(DamptuneError, ValueError):
    """The population is too small for the requested algorithm."""


class ObjectiveEvaluationError(DamptuneError, RuntimeError):
    """Objective evaluation failed; carries the offending position."""

    def __init__(self, message: str, position: np.ndarray):
        super().__init__(message)
        self.position = np.asarray(position, dtype=float).copy()


class ConfigError(DamptuneError, ValueError):
    """Invalid experiment configuration or input file."""


class ExperimentFailure(DamptuneError, RuntimeError):
    """An optimization run inside an experiment failed.

    Annotated with the (algorithm, seed) pair that failed; the underlying
    cause is chained.
    """

    def __init__(self, message: str, algorithm: str, seed: int):
        super().__init__(message)
        self.algorithm = algorithm
        self.seed = seed
