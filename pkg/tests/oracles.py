"""Independent truncated-Fock oracles used only by the tests.

Everything here works in a number-state basis truncated at ``nmax`` and
never touches the coherent-dyad code paths it checks: spectra come from
dense (or rank-factored) diagonalization, moments from ladder matrices,
Wigner values from displaced-parity expectation values, and the geometric
discord from a direct minimization over classical-quantum states.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

DEFAULT_NMAX = 40


def fock_nmax(gamma: float) -> int:
    return max(DEFAULT_NMAX, math.ceil((abs(gamma) + 4.0) ** 2))


def coherent_vector(alpha: complex, nmax: int) -> np.ndarray:
    """Number-basis coefficients of ``|alpha>`` truncated at ``nmax``."""
    vec = np.zeros(nmax + 1, dtype=complex)
    vec[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, nmax + 1):
        vec[n] = vec[n - 1] * alpha / math.sqrt(n)
    return vec


def cat_vectors(gamma: complex, nmax: int):
    even = coherent_vector(gamma, nmax) + coherent_vector(-gamma, nmax)
    odd = coherent_vector(gamma, nmax) - coherent_vector(-gamma, nmax)
    return even / np.linalg.norm(even), odd / np.linalg.norm(odd)


def lowering(nmax: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, nmax + 1)), 1).astype(complex)


def dyad_to_fock(rho, nmax: int) -> np.ndarray:
    """Dense Fock matrix of a coherent-dyad operator (1 or 2 modes)."""
    dim = (nmax + 1) ** rho.modes
    out = np.zeros((dim, dim), dtype=complex)
    for c, ket, bra in rho.terms:
        kvec = coherent_vector(ket[0], nmax)
        bvec = coherent_vector(bra[0], nmax)
        if rho.modes == 2:
            kvec = np.kron(kvec, coherent_vector(ket[1], nmax))
            bvec = np.kron(bvec, coherent_vector(bra[1], nmax))
        out += c * np.outer(kvec, bvec.conj())
    return out


def mixture_fock_spectrum(components, nmax: int) -> np.ndarray:
    """Spectrum of ``sum w_k |psi_k><psi_k|`` without building the big matrix.

    With ``Y = [sqrt(w_k) psi_k]`` the nonzero spectrum of ``Y Y^H`` equals
    that of the small matrix ``Y^H Y``.
    """
    cols = [math.sqrt(w) * psi for w, psi in components]
    y = np.stack(cols, axis=1)
    small = y.conj().T @ y
    eigs = np.linalg.eigvalsh(small)
    return np.sort(np.clip(eigs, 0.0, None))[::-1]


def _product_trace(mat: np.ndarray, op: np.ndarray) -> complex:
    # Tr(mat @ op) without forming the product.
    return complex(np.sum(mat * op.T))


def fock_moment(mat: np.ndarray, nmax: int, m1, n1, m2=0, n2=0) -> complex:
    a = lowering(nmax)
    ad = a.conj().T
    op1 = np.linalg.matrix_power(ad, m1) @ np.linalg.matrix_power(a, n1)
    if mat.shape[0] == nmax + 1:
        return _product_trace(mat, op1)
    op2 = np.linalg.matrix_power(ad, m2) @ np.linalg.matrix_power(a, n2)
    return _product_trace(mat, np.kron(op1, op2))


def displaced_parity(z: complex, nmax: int) -> np.ndarray:
    """``D(z) P D(z)^dag`` with ``P`` the photon-number parity."""
    a = lowering(nmax)
    d = expm(z * a.conj().T - np.conj(z) * a)
    parity = np.diag((-1.0) ** np.arange(nmax + 1)).astype(complex)
    return d @ parity @ d.conj().T


def fock_wigner(mat: np.ndarray, nmax: int, z1: complex, z2=None) -> float:
    """Wigner value via the displaced-parity operator, per-mode normalized."""
    k1 = displaced_parity(z1, nmax)
    if z2 is None:
        op = k1
        scale = 2.0 / math.pi
    else:
        op = np.kron(k1, displaced_parity(z2, nmax))
        scale = (2.0 / math.pi) ** 2
    return scale * _product_trace(mat, op).real


def fock_husimi(mat: np.ndarray, nmax: int, z1: complex, z2=None) -> float:
    vec = coherent_vector(z1, nmax)
    if z2 is not None:
        vec = np.kron(vec, coherent_vector(z2, nmax))
    value = vec.conj() @ mat @ vec
    return float(value.real) / math.pi ** (1 if z2 is None else 2)


def fock_qubit_matrix(mat: np.ndarray, gamma: complex, nmax: int) -> np.ndarray:
    """Project a two-mode Fock matrix onto the cat-pair basis."""
    even, odd = cat_vectors(gamma, nmax)
    basis = [np.kron(a, b) for a in (even, odd) for b in (even, odd)]
    out = np.array([[bi.conj() @ mat @ bj for bj in basis] for bi in basis])
    return out


def brute_force_geometric_discord(matrix: np.ndarray, seeds: int = 512) -> float:
    """Direct minimization of ``|rho - chi|_F^2`` over classical-quantum states.

    For a fixed measurement axis on A the optimal classical-quantum state is
    the block-dephased one, so only the axis is searched (coarse scan plus
    a simplex polish).
    """
    r = matrix.reshape(2, 2, 2, 2)

    def distance(angles):
        theta, phi = angles
        psi_up = np.array([math.cos(theta / 2), math.sin(theta / 2) * np.exp(1j * phi)])
        psi_dn = np.array([math.sin(theta / 2), -math.cos(theta / 2) * np.exp(1j * phi)])
        chi = np.zeros((4, 4), dtype=complex)
        for psi in (psi_up, psi_dn):
            block = np.einsum("a,abcd,c->bd", psi.conj(), r, psi)
            chi += np.kron(np.outer(psi, psi.conj()), block)
        diff = matrix - chi
        return float(np.sum(np.abs(diff) ** 2))

    best = math.inf
    best_angles = (0.0, 0.0)
    i = np.arange(seeds)
    zs = 1.0 - 2.0 * (i + 0.5) / seeds
    thetas = np.arccos(np.clip(zs, -1, 1))
    phis = (i * math.pi * (3.0 - math.sqrt(5.0))) % (2 * math.pi)
    for theta, phi in zip(thetas, phis):
        val = distance((theta, phi))
        if val < best:
            best, best_angles = val, (theta, phi)
    res = minimize(
        distance,
        np.array(best_angles),
        method="Nelder-Mead",
        options={"xatol": 1e-9, "fatol": 1e-14, "maxiter": 600},
    )
    return min(best, float(res.fun))


def riemann_negativity(mat: np.ndarray, nmax: int, half_width: float, points: int):
    """Brute-force single-mode negativity on a uniform grid (slow, test-only)."""
    axis = np.linspace(-half_width, half_width, points)
    step = axis[1] - axis[0]
    total = 0.0
    for x in axis:
        for y in axis:
            total += abs(fock_wigner(mat, nmax, complex(x, y))) * step * step
    return total - 1.0
