"""Lead-lag controller closed-loop construction and damping-ratio objective.

The plant is a linear state-space model x' = A x + B u. A washout stage
(time constant T_w) taps one plant state and feeds a lead-lag compensator
K (1 + s T1) / (1 + s T2), whose output closes the loop through B. Both
dynamic stages are appended as extra states, yielding an autonomous
(n+2) x (n+2) system z' = M z over z = [x_1..x_n, washout, u]. The tuning
objective is the minimum damping ratio over the eigenvalues of M.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .exceptions import ConfigError, InvalidParamsError, ZeroEigenvalueError
from .linalg import eigenvalues
from .space import SearchSpace


@dataclass(frozen=True)
class StateSpacePlant:
    """Linear plant plus the wiring of the damping controller.

    a : (n, n) state matrix, b : length-n input vector. `sensed_state` is
    the 0-based index of the state tapped by the washout filter and
    `input_row` the 0-based index of the state equation driven by u.
    """

    a: np.ndarray
    b: np.ndarray
    washout_time_constant: float = 3.0
    sensed_state: int = 1
    input_row: int = 3

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ConfigError(f"plant state matrix must be square, got shape {a.shape}")
        n = a.shape[0]
        if b.shape != (n,):
            raise ConfigError(f"plant input vector must have {n} rows, got {b.shape[0]}")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ConfigError("plant matrices must have finite entries")
        if not (np.isfinite(self.washout_time_constant) and self.washout_time_constant > 0):
            raise ConfigError("washout time constant must be positive")
        for label, idx in (("sensed_state", self.sensed_state), ("input_row", self.input_row)):
            if not (isinstance(idx, (int, np.integer)) and 0 <= idx < n):
                raise ConfigError(f"{label} must be a valid 0-based state index, got {idx!r}")
        if b[self.input_row] == 0.0:
            raise ConfigError("input_row points at a state equation with zero input gain")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "washout_time_constant", float(self.washout_time_constant))
        object.__setattr__(self, "sensed_state", int(self.sensed_state))
        object.__setattr__(self, "input_row", int(self.input_row))

    @property
    def order(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class LeadLagParams:
    """Lead-lag compensator parameters: gain kc, lead t1, lag t2 (seconds)."""

    kc: float
    t1: float
    t2: float

    def __post_init__(self):
        for label, v in (("kc", self.kc), ("t1", self.t1), ("t2", self.t2)):
            if not np.isfinite(v):
                raise InvalidParamsError(f"{label} must be finite, got {v!r}")
        if self.t2 <= 0:
            raise InvalidParamsError(f"lag time constant t2 must be positive, got {self.t2}")

    def as_vector(self) -> np.ndarray:
        return np.array([self.kc, self.t1, self.t2], dtype=float)

    @classmethod
    def from_vector(cls, x) -> "LeadLagParams":
        x = np.asarray(x, dtype=float).reshape(-1)
        if x.shape != (3,):
            raise InvalidParamsError(f"expected a length-3 parameter vector, got {x.shape}")
        return cls(float(x[0]), float(x[1]), float(x[2]))


# Default tuning box for (kc, t1, t2).
LEAD_LAG_LOWER = (1.0, 0.1, 0.01)
LEAD_LAG_UPPER = (50.0, 1.0, 0.1)
LEAD_LAG_NAMES = ("kc", "t1", "t2")


def lead_lag_space() -> SearchSpace:
    """Default search box for the lead-lag tuning problem."""
    return SearchSpace(LEAD_LAG_LOWER, LEAD_LAG_UPPER, LEAD_LAG_NAMES)


def reference_plant() -> StateSpacePlant:
    """The bundled 4-state demonstration plant.

    Open loop it carries an unstable oscillatory mode, which makes it a
    useful regression target for the whole tuning pipeline.
    """
    a = [
        [0.0, 377.0, 0.0, 0.0],
        [-0.0587, 0.0, -0.1303, 0.0],
        [-0.0899, 0.0, -0.1956, 0.1289],
        [95.605, 0.0, -816.0862, -20.0],
    ]
    b = [0.0, 0.0, 0.0, 1000.0]
    return StateSpacePlant(a=a, b=b, washout_time_constant=3.0, sensed_state=1, input_row=3)


_PLANT_KEYS = {"a", "b", "washout_time_constant", "sensed_state", "input_row"}


def plant_from_dict(doc: dict) -> StateSpacePlant:
    """Build a plant from its JSON document form (1-based state indices)."""
    if not isinstance(doc, dict):
        raise ConfigError("plant document must be a JSON object")
    unknown = set(doc) - _PLANT_KEYS
    if unknown:
        raise ConfigError(f"unknown plant keys: {sorted(unknown)}")
    missing = _PLANT_KEYS - set(doc)
    if missing:
        raise ConfigError(f"missing plant keys: {sorted(missing)}")
    for label in ("sensed_state", "input_row"):
        idx = doc[label]
        if not isinstance(idx, int) or isinstance(idx, bool) or idx < 1:
            raise ConfigError(f"{label} must be a positive 1-based integer index, got {idx!r}")
    try:
        return StateSpacePlant(
            a=np.asarray(doc["a"], dtype=float),
            b=np.asarray(doc["b"], dtype=float),
            washout_time_constant=doc["washout_time_constant"],
            sensed_state=doc["sensed_state"] - 1,
            input_row=doc["input_row"] - 1,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid plant document: {exc}") from exc


def load_plant(path) -> StateSpacePlant:
    """Load and validate a plant from a JSON file."""
    p = Path(path)
    try:
        doc = json.loads(p.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read plant file {p}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"plant file {p} is not valid JSON: {exc}") from exc
    return plant_from_dict(doc)


def plant_to_dict(plant: StateSpacePlant) -> dict:
    """Inverse of `plant_from_dict` (indices back to 1-based)."""
    return {
        "a": plant.a.tolist(),
        "b": plant.b.tolist(),
        "washout_time_constant": plant.washout_time_constant,
        "sensed_state": plant.sensed_state + 1,
        "input_row": plant.input_row + 1,
    }


def assemble_closed_loop(plant: StateSpacePlant, params: LeadLagParams) -> np.ndarray:
    """Closed-loop state matrix over z = [x_1..x_n, washout, u].

    Row layout for plant order n (0-based):
      rows 0..n-1   plant rows of A, with B in the u column
      row n         washout: d(x_w) = d(x_sensed) - x_w / T_w
      row n+1       compensator: du = (K T1/T2) d(x_w) + (K/T2) x_w - u/T2
    where d(x_sensed) is expanded through the sensed plant row, making every
    entry an explicit function of (A, B, T_w, kc, t1, t2).
    """
    if params.t2 <= 0:
        raise InvalidParamsError(f"lag time constant t2 must be positive, got {params.t2}")
    n = plant.order
    s = plant.sensed_state
    tw = plant.washout_time_constant
    kc, t1, t2 = params.kc, params.t1, params.t2

    m = np.zeros((n + 2, n + 2))
    m[:n, :n] = plant.a
    m[:n, n + 1] = plant.b

    m[n, :n] = plant.a[s, :]
    m[n, n] = -1.0 / tw
    m[n, n + 1] = plant.b[s]

    gain = kc * t1 / t2
    m[n + 1, :] = gain * m[n, :]
    m[n + 1, n] += kc / t2
    m[n + 1, n + 1] += -1.0 / t2

    if not np.all(np.isfinite(m)):
        raise InvalidParamsError(
            f"closed-loop matrix has non-finite entries for params {params}"
        )
    return m


def damping_ratio(lam: complex) -> float:
    """Damping ratio of one eigenvalue: -Re(lam) / |lam|.

    1 for pure decay, 0 for undamped oscillation, negative for unstable
    modes; always in [-1, 1].
    """
    lam = complex(lam)
    if not (np.isfinite(lam.real) and np.isfinite(lam.imag)):
        raise ValueError(f"eigenvalue must be finite, got {lam}")
    mag = abs(lam)
    if mag == 0.0:
        raise ZeroEigenvalueError("damping ratio is undefined for a zero eigenvalue")
    return -lam.real / mag


def min_damping_ratio(spectrum) -> float:
    """Minimum damping ratio over a spectrum; the tuning objective."""
    ev = np.atleast_1d(np.asarray(spectrum, dtype=complex))
    if ev.size == 0:
        raise ValueError("spectrum must be nonempty")
    mags = np.abs(ev)
    if np.any(mags == 0.0):
        raise ZeroEigenvalueError("damping ratio is undefined for a zero eigenvalue")
    return float(np.min(-ev.real / mags))


def closed_loop_spectrum(plant: StateSpacePlant, params: LeadLagParams) -> np.ndarray:
    """Eigenvalues of the closed loop, sorted by (re, im)."""
    return eigenvalues(assemble_closed_loop(plant, params))


def objective_value(plant: StateSpacePlant, params: LeadLagParams) -> float:
    """Minimum closed-loop damping ratio for one parameter set."""
    return min_damping_ratio(closed_loop_spectrum(plant, params))


def damping_objective(plant: StateSpacePlant) -> Callable[[np.ndarray], float]:
    """Objective closure mapping a (kc, t1, t2) vector to min damping ratio.

    Pure and reentrant: safe to evaluate concurrently from several
    optimizer runs.
    """

    def objective(x: np.ndarray) -> float:
        return objective_value(plant, LeadLagParams.from_vector(x))

    return objective
