"""Dense real-matrix helpers: eigenvalues, trace, determinant.

Sized for small state matrices (a handful of states, well under the 64x64
guard) that get decomposed tens of thousands of times per experiment run.
Eigenvalues are delegated to LAPACK's real nonsymmetric solver (balancing,
Hessenberg reduction, Francis double-shift QR); the determinant is an
in-house pivoted LU so it can serve as an independent cross-check of the
eigensolver in tests.
"""

from __future__ import annotations

import numpy as np

from .exceptions import ConvergenceFailure, NonSquareMatrixError

MAX_DIMENSION = 64


def check_square_matrix(m, allow_complex: bool = False) -> np.ndarray:
    """Validate and return `m` as a square 2-D array of finite entries."""
    a = np.asarray(m, dtype=complex if allow_complex else float)
    if a.ndim != 2:
        raise NonSquareMatrixError(f"expected a 2-D matrix, got ndim={a.ndim}")
    if a.shape[0] != a.shape[1]:
        raise NonSquareMatrixError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        raise NonSquareMatrixError("matrix must be nonempty")
    if a.shape[0] > MAX_DIMENSION:
        raise ValueError(f"matrix dimension {a.shape[0]} exceeds supported maximum {MAX_DIMENSION}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must all be finite")
    return a


def eigenvalues(m) -> np.ndarray:
    """All eigenvalues of a square real matrix, with multiplicity.

    Returns a complex array sorted by (real part, then imaginary part)
    ascending, so repeated calls and logs are reproducible. Non-real
    eigenvalues of a real input come in conjugate pairs.

    Raises
    ------
    NonSquareMatrixError
        If the input is not square.
    ConvergenceFailure
        If the QR iteration fails to converge within LAPACK's budget.
    """
    a = check_square_matrix(m)
    try:
        ev = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigenvalue iteration failed: {exc}") from exc
    return np.sort_complex(ev)


def trace(m) -> float:
    """Sum of diagonal entries of a square matrix."""
    a = check_square_matrix(m)
    return float(np.trace(a))


def determinant(m) -> complex | float:
    """Determinant by pivoted LU elimination.

    Triangular inputs short-circuit to the exact diagonal product. Accepts
    complex matrices so tests can evaluate characteristic-polynomial
    residuals det(m - lambda*I) at complex lambda; real inputs return a
    plain float.
    """
    a = check_square_matrix(m, allow_complex=True)
    was_real = np.isrealobj(np.asarray(m))
    n = a.shape[0]

    if np.allclose(a, np.triu(a), rtol=0.0, atol=0.0) or np.allclose(
        a, np.tril(a), rtol=0.0, atol=0.0
    ):
        det = complex(np.prod(np.diagonal(a)))
        return det.real if was_real else det

    u = a.astype(complex).copy()
    sign = 1.0
    for k in range(n - 1):
        pivot = k + int(np.argmax(np.abs(u[k:, k])))
        if u[pivot, k] == 0:
            return 0.0 if was_real else 0.0 + 0.0j
        if pivot != k:
            u[[k, pivot], :] = u[[pivot, k], :]
            sign = -sign
        factors = u[k + 1 :, k] / u[k, k]
        u[k + 1 :, k:] -= np.outer(factors, u[k, k:])
    det = sign * complex(np.prod(np.diagonal(u)))
    return det.real if was_real else det
