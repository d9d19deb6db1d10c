"""First/second moments, covariance matrix, and relative-entropy non-Gaussianity.

Quadratures follow ``q = (a + a^dag)/sqrt(2)``, ``p = (a - a^dag)/(i sqrt(2))``
with ordering ``R = (q1, p1, q2, p2)``, so the vacuum covariance matrix is
``I/2`` and the symplectic eigenvalues of any physical state satisfy
``d >= 1/2``.  The non-Gaussianity of a state is the entropy gap to the
Gaussian state with identical first and second moments, in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import DyadOperator, normal_moment, spectrum, von_neumann_entropy

__all__ = [
    "CovarianceMatrix",
    "SymplecticPair",
    "covariance",
    "symplectic_eigenvalues",
    "bosonic_entropy",
    "gaussian_reference_entropy",
    "non_gaussianity",
    "SYMPLECTIC_FORM",
]

SYMPLECTIC_FORM = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


@dataclass(frozen=True)
class CovarianceMatrix:
    """Second-moment matrix and mean vector in the (q1, p1, q2, p2) ordering."""

    sigma: np.ndarray
    mean: np.ndarray

    def __post_init__(self):
        sigma = np.asarray(self.sigma, dtype=float)
        mean = np.asarray(self.mean, dtype=float)
        if sigma.shape != (4, 4) or mean.shape != (4,):
            raise ValueError("covariance is 4x4 with a length-4 mean")
        if not np.all(np.isfinite(sigma)) or not np.all(np.isfinite(mean)):
            raise ValueError("covariance entries must be finite")
        if np.max(np.abs(sigma - sigma.T)) > 1e-12:
            raise ValueError("covariance matrix must be symmetric")
        # Uncertainty relation: sigma + i*Omega/2 must be PSD (within 1e-9).
        herm = sigma + 0.5j * SYMPLECTIC_FORM
        min_eig = float(np.linalg.eigvalsh(herm)[0])
        if min_eig < -1e-9:
            raise ValueError(
                f"uncertainty relation violated: min eig {min_eig:.3e}"
            )
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "mean", mean)


@dataclass(frozen=True)
class SymplecticPair:
    d_plus: float
    d_minus: float

    def __post_init__(self):
        if not (self.d_plus >= self.d_minus >= 0.5 - 1e-9):
            raise ValueError(
                f"symplectic eigenvalues ({self.d_plus}, {self.d_minus}) "
                "below the vacuum floor 1/2"
            )


def covariance(rho: DyadOperator) -> CovarianceMatrix:
    """Covariance matrix of a two-mode state from its normal-ordered moments."""
    if rho.modes != 2:
        raise ValueError("covariance needs a 2-mode state")

    def mom(m1, n1, m2, n2):
        return normal_moment(rho, m1, n1, m2, n2)

    a1 = mom(0, 1, 0, 0)
    a2 = mom(0, 0, 0, 1)
    a1sq = mom(0, 2, 0, 0)
    a2sq = mom(0, 0, 0, 2)
    n1 = mom(1, 1, 0, 0).real
    n2 = mom(0, 0, 1, 1).real
    x = mom(0, 1, 0, 1)  # <a1 a2>
    y = mom(1, 0, 0, 1)  # <a1^dag a2>

    mean = np.array(
        [
            math.sqrt(2.0) * a1.real,
            math.sqrt(2.0) * a1.imag,
            math.sqrt(2.0) * a2.real,
            math.sqrt(2.0) * a2.imag,
        ]
    )
    sigma = np.empty((4, 4))
    # Single-mode blocks: <q^2> = Re<a^2> + <n> + 1/2, <p^2> = -Re<a^2> + <n> + 1/2,
    # symmetrized <qp> = Im<a^2>.
    for j, (asq, nn) in enumerate(((a1sq, n1), (a2sq, n2))):
        o = 2 * j
        sigma[o, o] = asq.real + nn + 0.5
        sigma[o + 1, o + 1] = -asq.real + nn + 0.5
        sigma[o, o + 1] = sigma[o + 1, o] = asq.imag
    # Cross blocks from X = <a1 a2>, Y = <a1^dag a2> (modes commute).
    sigma[0, 2] = sigma[2, 0] = x.real + y.real
    sigma[0, 3] = sigma[3, 0] = x.imag + y.imag
    sigma[1, 2] = sigma[2, 1] = x.imag - y.imag
    sigma[1, 3] = sigma[3, 1] = y.real - x.real
    sigma -= np.outer(mean, mean)
    return CovarianceMatrix(sigma, mean)


def symplectic_eigenvalues(cov: CovarianceMatrix) -> SymplecticPair:
    """Symplectic spectrum from the local invariants of the 2x2 blocks.

    ``d_+- = sqrt((Delta +- sqrt(Delta^2 - 4 det sigma)) / 2)`` with
    ``Delta = det A + det B + 2 det C``.
    """
    s = cov.sigma
    det_a = float(np.linalg.det(s[:2, :2]))
    det_b = float(np.linalg.det(s[2:, 2:]))
    det_c = float(np.linalg.det(s[:2, 2:]))
    det_s = float(np.linalg.det(s))
    delta = det_a + det_b + 2.0 * det_c
    disc = delta * delta - 4.0 * det_s
    if disc < -1e-9:
        raise ValueError(f"invalid covariance matrix: discriminant {disc:.3e}")
    root = math.sqrt(max(disc, 0.0))
    d_plus = math.sqrt(max((delta + root) / 2.0, 0.0))
    d_minus = math.sqrt(max((delta - root) / 2.0, 0.0))
    return SymplecticPair(d_plus, d_minus)


def bosonic_entropy(x: float) -> float:
    """``h(x) = (x + 1/2) ln(x + 1/2) - (x - 1/2) ln(x - 1/2)``; ``h(1/2) = 0``."""
    up = x + 0.5
    down = x - 0.5
    out = up * math.log(up)
    if down > 0.0:
        out -= down * math.log(down)
    return out


def gaussian_reference_entropy(pair: SymplecticPair) -> float:
    """Entropy (nats) of the Gaussian state with symplectic spectrum ``pair``."""
    return bosonic_entropy(pair.d_plus) + bosonic_entropy(pair.d_minus)


def non_gaussianity(rho: DyadOperator) -> float:
    """Entropy gap (nats) between ``rho`` and its matched Gaussian reference.

    Equals the relative entropy to the Gaussian state with the same first
    and second moments, hence nonnegative.
    """
    pair = symplectic_eigenvalues(covariance(rho))
    s_reference = gaussian_reference_entropy(pair)
    s_state = von_neumann_entropy(spectrum(rho), base="e")
    return s_reference - s_state
