"""Two-qubit embedding and quantum-correlation measures.

States supported on ``span{|gamma>, |-gamma>}`` per mode embed exactly into
the orthonormal basis built from the even and odd superpositions; the basis
order is ``{|ee>, |eo>, |oe>, |oo>}`` with mode A as the left factor.  All
measures below act on that 4x4 matrix: mutual information, measurement-
maximized classical correlation, quantum discord, local quantum uncertainty
(skew-information based), geometric discord, correlation rank, and the
correlation-tensor determinant.

Entropic quantities default to base 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .algebra import (
    DyadOperator,
    ModeKet,
    SupportLeakageError,
    cat_kets,
    ket_overlap,
    von_neumann_entropy,
)

__all__ = [
    "PAULI",
    "QubitDensityMatrix",
    "BlochDecomposition",
    "qubit_matrix",
    "bloch_decomposition",
    "mutual_information",
    "classical_correlation",
    "quantum_discord",
    "lqu",
    "geometric_discord",
    "correlation_rank",
    "t_det",
    "measurement_axis",
]

PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

SPHERE_SEED_POINTS = 2048
RANK_CUTOFF = 1e-12


@dataclass(frozen=True)
class QubitDensityMatrix:
    """4x4 density matrix in the cat basis, together with its gamma."""

    matrix: np.ndarray
    gamma: complex

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError("qubit density matrix must be 4x4")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise ValueError("qubit density matrix must be Hermitian")
        if abs(np.trace(m).real - 1.0) > 1e-10 or abs(np.trace(m).imag) > 1e-10:
            raise ValueError("qubit density matrix must have unit trace")
        if float(np.linalg.eigvalsh(m)[0]) < -1e-10:
            raise ValueError("qubit density matrix must be positive semidefinite")
        object.__setattr__(self, "matrix", m)

    def marginal(self, side: int) -> np.ndarray:
        r = self.matrix.reshape(2, 2, 2, 2)
        return np.einsum("abcb->ac", r) if side == 0 else np.einsum("abad->bd", r)


@dataclass(frozen=True)
class BlochDecomposition:
    """Local Bloch vectors and the 3x3 correlation tensor."""

    x: np.ndarray
    y: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        for v in (self.x, self.y):
            if np.linalg.norm(v) > 1.0 + 1e-10:
                raise ValueError("Bloch vector longer than 1")


def measurement_axis(theta: float, phi: float) -> np.ndarray:
    """Unit Bloch vector for polar angles ``(theta, phi)``."""
    return np.array(
        [
            math.sin(theta) * math.cos(phi),
            math.sin(theta) * math.sin(phi),
            math.cos(theta),
        ]
    )


def qubit_matrix(rho: DyadOperator, gamma: complex) -> QubitDensityMatrix:
    """Project a two-mode dyad operator onto the cat basis of ``gamma``.

    Raises :class:`SupportLeakageError` when more than 1e-10 of the trace
    lives outside ``span{|gamma>, |-gamma>}`` per mode.
    """
    if rho.modes != 2:
        raise ValueError("qubit embedding needs a 2-mode state")
    even, odd = cat_kets(gamma)
    basis = (even, odd)

    def bra_cat_ket_label(cat: ModeKet, label: complex) -> complex:
        return ket_overlap(cat, ModeKet(((1.0 + 0.0j, label),)))

    m = np.zeros((4, 4), dtype=complex)
    for c, ket, bra in rho.terms:
        ket_amp = np.array(
            [
                bra_cat_ket_label(basis[i], ket[0]) * bra_cat_ket_label(basis[j], ket[1])
                for i in range(2)
                for j in range(2)
            ]
        )
        bra_amp = np.array(
            [
                bra_cat_ket_label(basis[k], bra[0]) * bra_cat_ket_label(basis[l], bra[1])
                for k in range(2)
                for l in range(2)
            ]
        )
        m += c * np.outer(ket_amp, bra_amp.conj())
    loss = abs(np.trace(m).real - 1.0)
    if loss > 1e-10:
        raise SupportLeakageError(
            f"projection lost {loss:.3e} of the trace; state not supported "
            "on the cat subspace"
        )
    m = 0.5 * (m + m.conj().T)
    return QubitDensityMatrix(m / np.trace(m).real, complex(gamma))


def bloch_decomposition(rhoq: QubitDensityMatrix) -> BlochDecomposition:
    m = rhoq.matrix
    x = np.array([np.trace(m @ np.kron(PAULI[i], PAULI[0])).real for i in (1, 2, 3)])
    y = np.array([np.trace(m @ np.kron(PAULI[0], PAULI[i])).real for i in (1, 2, 3)])
    t = np.array(
        [
            [np.trace(m @ np.kron(PAULI[i], PAULI[j])).real for j in (1, 2, 3)]
            for i in (1, 2, 3)
        ]
    )
    return BlochDecomposition(x, y, t)


def _matrix_entropy(m: np.ndarray, base=2) -> float:
    eigs = np.clip(np.linalg.eigvalsh(m), 0.0, None)
    return von_neumann_entropy(eigs, base=base)


def mutual_information(rhoq: QubitDensityMatrix, base=2) -> float:
    """Total correlation ``S(A) + S(B) - S(AB)``."""
    return (
        _matrix_entropy(rhoq.marginal(0), base)
        + _matrix_entropy(rhoq.marginal(1), base)
        - _matrix_entropy(rhoq.matrix, base)
    )


def _conditional_entropy_sum(rhoq: QubitDensityMatrix, thetas, phis, base=2):
    """``sum_i p_i S(B | outcome i)`` for a batch of measurement axes on A."""
    r = rhoq.matrix.reshape(2, 2, 2, 2)
    half = np.asarray(thetas) / 2.0
    phase = np.exp(1j * np.asarray(phis))
    # Orthogonal projector pair along each axis.
    psi_up = np.stack([np.cos(half), np.sin(half) * phase], axis=-1)
    psi_dn = np.stack([np.sin(half), -np.cos(half) * phase], axis=-1)
    log = np.log2 if base == 2 else np.log
    total = np.zeros(psi_up.shape[0])
    for psi in (psi_up, psi_dn):
        block = np.einsum("ka,abcd,kc->kbd", psi.conj(), r, psi)
        tr = np.trace(block, axis1=1, axis2=2).real
        diff = block[:, 0, 0] - block[:, 1, 1]
        disc = np.sqrt(np.abs(diff) ** 2 + 4.0 * np.abs(block[:, 0, 1]) ** 2).real
        lam1 = np.clip((tr + disc) / 2.0, 0.0, None)
        lam2 = np.clip((tr - disc) / 2.0, 0.0, None)
        for lam in (lam1, lam2):
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.where(tr > 0.0, lam / np.where(tr > 0, tr, 1.0), 0.0)
                term = np.where(ratio > 0.0, -lam * log(ratio), 0.0)
            total += term
    return total


def _fibonacci_sphere(n: int):
    i = np.arange(n)
    z = 1.0 - 2.0 * (i + 0.5) / n
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phi = (i * math.pi * (3.0 - math.sqrt(5.0))) % (2.0 * math.pi)
    return theta, phi


def classical_correlation(
    rhoq: QubitDensityMatrix, base=2
) -> tuple[float, np.ndarray]:
    """Maximum of ``S(B) - sum_i p_i S(B|i)`` over projective axes on A.

    A Fibonacci-lattice seed scan is polished by Nelder-Mead; returns the
    maximum and the optimal measurement axis (first-found on ties).
    """
    s_b = _matrix_entropy(rhoq.marginal(1), base)
    thetas, phis = _fibonacci_sphere(SPHERE_SEED_POINTS)
    cond = _conditional_entropy_sum(rhoq, thetas, phis, base)
    best = int(np.argmin(cond))

    def objective(ang):
        return float(_conditional_entropy_sum(rhoq, [ang[0]], [ang[1]], base)[0])

    res = minimize(
        objective,
        np.array([thetas[best], phis[best]]),
        method="Nelder-Mead",
        options={"xatol": 1e-8, "fatol": 1e-13, "maxiter": 500},
    )
    if res.fun <= cond[best]:
        theta, phi = float(res.x[0]), float(res.x[1])
        value = s_b - float(res.fun)
    else:
        theta, phi = float(thetas[best]), float(phis[best])
        value = s_b - float(cond[best])
    axis = measurement_axis(theta, phi)
    # The +-axis pair defines the same measurement; canonicalize to z >= 0.
    if axis[2] < 0.0:
        axis = -axis
    return value, axis


def quantum_discord(rhoq: QubitDensityMatrix, base=2) -> float:
    """Mutual information minus the maximized classical correlation."""
    j_value, _ = classical_correlation(rhoq, base)
    return mutual_information(rhoq, base) - j_value


def lqu(rhoq: QubitDensityMatrix) -> float:
    """Local quantum uncertainty of side A.

    ``1 - lambda_max(W)`` with ``W_ij = Tr(sqrt(rho) (sigma_i x I) sqrt(rho)
    (sigma_j x I))``, the closed form of the minimum skew information over
    local observables on A.
    """
    eigs, vecs = np.linalg.eigh(rhoq.matrix)
    eigs = np.clip(eigs, 0.0, None)
    # Zero eigenvalues carry O(eps) noise that sqrt would blow up to O(sqrt(eps)).
    eigs[eigs < 1e-13 * max(eigs[-1], 1e-300)] = 0.0
    root = (vecs * np.sqrt(eigs)) @ vecs.conj().T
    w = np.empty((3, 3))
    sided = [root @ np.kron(PAULI[i], PAULI[0]) for i in (1, 2, 3)]
    for i in range(3):
        for j in range(3):
            w[i, j] = np.trace(sided[i] @ sided[j]).real
    w = 0.5 * (w + w.T)
    return 1.0 - float(np.linalg.eigvalsh(w)[-1])


def geometric_discord(rhoq: QubitDensityMatrix) -> float:
    """Squared Hilbert-Schmidt distance to the closest classical-quantum state.

    Closed two-qubit form ``(|x|^2 + |T|_F^2 - lambda_max(x x^T + T T^T)) / 4``.
    """
    b = bloch_decomposition(rhoq)
    big = np.outer(b.x, b.x) + b.t @ b.t.T
    lam_max = float(np.linalg.eigvalsh(big)[-1])
    return 0.25 * (float(b.x @ b.x) + float(np.sum(b.t * b.t)) - lam_max)


def correlation_rank(rhoq: QubitDensityMatrix, cutoff: float = RANK_CUTOFF) -> int:
    """Number of terms in the operator Schmidt decomposition.

    Counts singular values of ``R_mn = Tr(rho sigma_m x sigma_n)``
    (``sigma_0`` the identity) above ``cutoff`` relative to the largest.
    """
    m = rhoq.matrix
    r = np.array(
        [
            [np.trace(m @ np.kron(PAULI[a], PAULI[b])).real for b in range(4)]
            for a in range(4)
        ]
    )
    sv = np.linalg.svd(r, compute_uv=False)
    return int(np.sum(sv > cutoff * sv[0]))


def t_det(rhoq: QubitDensityMatrix) -> float:
    """Determinant of the 3x3 correlation tensor."""
    return float(np.linalg.det(bloch_decomposition(rhoq).t))
