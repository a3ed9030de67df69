"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np

# Published open-loop eigenvalues of the bundled reference plant.
REFERENCE_OPEN_LOOP = np.sort_complex(
    np.array(
        [
            -10.3932 + 3.2910j,
            -10.3932 - 3.2910j,
            0.2954 + 4.9577j,
            0.2954 - 4.9577j,
        ]
    )
)

# Published optimal designs for the reference plant: parameter triple,
# closed-loop spectrum, and minimum damping ratio.
REFERENCE_TRIPLES = {
    "ga": (18.3998, 0.2619, 0.1),
    "de": (18.402, 0.2618, 0.1),
    "boa": (18.1352, 0.2714, 0.1),
}
REFERENCE_SPECTRA = {
    "ga": [
        -18.2 + 0j,
        -3.032 + 5.5839j,
        -3.032 - 5.5839j,
        -2.9595 + 5.4499j,
        -2.9595 - 5.4499j,
        -0.34543 + 0j,
    ],
    "de": [
        -18.199 + 0j,
        -3.0183 + 5.5576j,
        -3.0183 - 5.5576j,
        -2.9737 + 5.4754j,
        -2.9737 - 5.4754j,
        -0.34544 + 0j,
    ],
    "boa": [
        -18.296 + 0j,
        -3.2845 + 6.1484j,
        -3.2845 - 6.1484j,
        -2.6591 + 4.9738j,
        -2.6591 - 4.9738j,
        -0.34519 + 0j,
    ],
}
REFERENCE_ZETA_MIN = {"ga": 0.4772, "de": 0.4772, "boa": 0.4712}


class FixedRandom:
    """Stub generator whose random() always returns the same value."""

    def __init__(self, value: float):
        self.value = value

    def random(self):
        return self.value


def random_matrix(rng: np.random.Generator, n: int, scale: float = 1.0) -> np.ndarray:
    return rng.uniform(-scale, scale, (n, n))


def matched_spectrum_distance(a, b) -> float:
    """Max distance under greedy nearest-neighbour eigenvalue matching.

    Robust against near-ties flipping the deterministic (re, im) sort
    order between two computations of the same spectrum.
    """
    a = list(np.asarray(a, dtype=complex))
    b = list(np.asarray(b, dtype=complex))
    assert len(a) == len(b)
    worst = 0.0
    for lam in a:
        gaps = [abs(lam - mu) for mu in b]
        j = int(np.argmin(gaps))
        worst = max(worst, gaps[j])
        b.pop(j)
    return worst


def conjugate_pair_defect(spectrum) -> float:
    """Worst-case mismatch when pairing non-real eigenvalues with conjugates.

    Returns the largest distance between an eigenvalue with positive
    imaginary part and the conjugate of its best-matching partner with
    negative imaginary part; 0.0 when the spectrum is real.
    """
    ev = np.asarray(spectrum, dtype=complex)
    upper = sorted((l for l in ev if l.imag > 0), key=lambda l: (l.real, l.imag))
    lower = sorted((np.conj(l) for l in ev if l.imag < 0), key=lambda l: (l.real, l.imag))
    if len(upper) != len(lower):
        return float("inf")
    if not upper:
        return 0.0
    return matched_spectrum_distance(upper, lower)
