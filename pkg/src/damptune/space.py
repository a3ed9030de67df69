"""Box-constrained search spaces and bounds validation helpers."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigError


@dataclass(frozen=True)
class SearchSpace:
    """A box of per-dimension [lower, upper] bounds.

    Immutable; positions produced by samplers and clips are new arrays.
    """

    lower: np.ndarray
    upper: np.ndarray
    names: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        lo = np.atleast_1d(np.asarray(self.lower, dtype=float))
        hi = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lo.ndim != 1 or hi.ndim != 1 or lo.shape != hi.shape:
            raise ConfigError("lower and upper bounds must be 1-D and the same length")
        if lo.size == 0:
            raise ConfigError("search space must have at least one dimension")
        if not (np.all(np.isfinite(lo)) and np.all(np.isfinite(hi))):
            raise ConfigError("bounds must be finite")
        if not np.all(lo < hi):
            raise ConfigError("every lower bound must be strictly below its upper bound")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if self.names is not None:
            names = tuple(str(n) for n in self.names)
            if len(names) != lo.size:
                raise ConfigError("names must match the number of dimensions")
            object.__setattr__(self, "names", names)

    @property
    def dimension(self) -> int:
        return self.lower.size

    def clip(self, x: np.ndarray) -> np.ndarray:
        """Clamp a position into the box."""
        return np.clip(x, self.lower, self.upper)

    def contains(self, x: np.ndarray) -> bool:
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw `n` positions uniformly in the box, one per row."""
        span = self.upper - self.lower
        return self.lower + span * rng.random((n, self.dimension))


def as_search_space(bounds) -> SearchSpace:
    """Coerce `bounds` to a SearchSpace.

    Accepts a SearchSpace, a (lower, upper) pair of vectors, or a sequence
    of per-dimension (low, high) pairs.
    """
    if isinstance(bounds, SearchSpace):
        return bounds
    try:
        arr = np.asarray(bounds, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"cannot interpret bounds: {bounds!r}") from exc
    if arr.ndim == 2 and arr.shape[0] == 2 and arr.shape[1] != 2:
        return SearchSpace(arr[0], arr[1])
    if arr.ndim == 2 and arr.shape[1] == 2:
        # rows are per-dimension (low, high) pairs; a 2x2 input reads this way
        return SearchSpace(arr[:, 0], arr[:, 1])
    raise ConfigError(f"cannot interpret bounds with shape {arr.shape}")
