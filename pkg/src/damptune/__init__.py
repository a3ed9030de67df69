"""Bounded population metaheuristics with a damping-ratio tuning application."""

from .control import (
    LeadLagParams,
    StateSpacePlant,
    assemble_closed_loop,
    closed_loop_spectrum,
    damping_objective,
    damping_ratio,
    lead_lag_space,
    load_plant,
    min_damping_ratio,
    objective_value,
    plant_from_dict,
    plant_to_dict,
    reference_plant,
)
from .exceptions import (
    ConfigError,
    ConvergenceFailure,
    DamptuneError,
    ExperimentFailure,
    InvalidParamsError,
    NegativeIntensityError,
    NonSquareMatrixError,
    ObjectiveEvaluationError,
    PopulationTooSmallError,
    ZeroEigenvalueError,
)
from .experiment import (
    ComparisonReport,
    ExperimentConfig,
    config_from_dict,
    config_from_file,
    run_experiment,
    verify_reference_tables,
)
from .linalg import determinant, eigenvalues, trace
from .optimizers import (
    ButterflyOptimizer,
    DifferentialEvolution,
    GeneticAlgorithm,
    RunRecord,
)
from .space import SearchSpace, as_search_space

__version__ = "0.1.0"

__all__ = [
    "ButterflyOptimizer",
    "ComparisonReport",
    "ConfigError",
    "ConvergenceFailure",
    "DamptuneError",
    "DifferentialEvolution",
    "ExperimentConfig",
    "ExperimentFailure",
    "GeneticAlgorithm",
    "InvalidParamsError",
    "LeadLagParams",
    "NegativeIntensityError",
    "NonSquareMatrixError",
    "ObjectiveEvaluationError",
    "PopulationTooSmallError",
    "RunRecord",
    "SearchSpace",
    "StateSpacePlant",
    "ZeroEigenvalueError",
    "as_search_space",
    "assemble_closed_loop",
    "closed_loop_spectrum",
    "config_from_dict",
    "config_from_file",
    "damping_objective",
    "damping_ratio",
    "determinant",
    "eigenvalues",
    "lead_lag_space",
    "load_plant",
    "min_damping_ratio",
    "objective_value",
    "plant_from_dict",
    "plant_to_dict",
    "reference_plant",
    "run_experiment",
    "trace",
    "verify_reference_tables",
]
