"""Wigner-negativity minimization over marginal-classicality-preserving
local unitaries.

The search space is local unitaries acting inside the two-dimensional cat
subspace of each mode (identity on the complement), parameterized by three
angles per side.  This makes the reported minimum a lower bound of the
minimum over the full unitary group of each mode, which is not searchable;
every transformation of interest here (for example the cat-basis bit flip)
lives in this subspace.

A candidate is feasible when both transformed marginals have Wigner
functions above ``-1e-6 * (2/pi)`` on a 61x61 probe grid; infeasible
candidates are rejected.  A coarse angle grid with a cheap quadrature seeds
a simplex refinement at the production node count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .algebra import DyadOperator, cat_kets
from .catalog import dyads_from_qubit_matrix
from .phasespace import (
    QuadratureSpec,
    _grid_1d,
    negativity_volume,
    wigner_dyad_kernel,
)
from .qubit import qubit_matrix

__all__ = [
    "LocalUnitaryParams",
    "OptimizerSpec",
    "MinNegativityResult",
    "cat_subspace_unitary",
    "min_negativity",
]

CLASSICALITY_TOL = 1e-6 * (2.0 / math.pi)
PROBE_POINTS = 61


@dataclass(frozen=True)
class LocalUnitaryParams:
    """Three angles per side parameterizing the cat-subspace unitaries."""

    theta_a: float
    phi_a: float
    psi_a: float
    theta_b: float
    phi_b: float
    psi_b: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.theta_a, self.phi_a, self.psi_a, self.theta_b, self.phi_b, self.psi_b]
        )

    def norm(self) -> float:
        return float(np.linalg.norm(self.as_array()))


IDENTITY_PARAMS = LocalUnitaryParams(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class OptimizerSpec:
    """Grid-plus-refinement search policy."""

    points_per_angle: int = 5
    coarse_nodes: int = 48
    refine_nodes: int = 96
    refine_seeds: int = 3
    xatol: float = 1e-3
    fatol: float = 1e-6
    maxfev: int = 300


@dataclass(frozen=True)
class MinNegativityResult:
    value: float
    params: LocalUnitaryParams
    feasible: bool
    raw_value: float


def cat_subspace_unitary(theta: float, phi: float, psi: float) -> np.ndarray:
    """2x2 unitary on the cat subspace (covers SU(2) up to a global phase)."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array(
        [
            [c, -s * np.exp(1j * psi)],
            [s * np.exp(1j * phi), c * np.exp(1j * (phi + psi))],
        ],
        dtype=complex,
    )


class _NegativityEngine:
    """Shared grids and factor matrices for repeated negativity evaluations.

    Any state supported on the cat subspace expands over at most 16 coherent
    dyads whose per-mode kernels depend only on the label pair; the engine
    precomputes those kernel columns on the quadrature grid once, so each
    candidate costs one small matrix product plus the blocked ``|W|``
    accumulation.
    """

    def __init__(self, gamma: complex, half_width: float, nodes: int):
        g = complex(gamma)
        self.labels = (g, -g)
        spec = QuadratureSpec(half_width, nodes)
        # Fastest kernel-phase frequency among the label pairs (2|a - b|).
        x, wx = _grid_1d(spec, 4.0 * abs(g.imag))
        y, wy = _grid_1d(spec, 4.0 * abs(g.real))
        z = (x[:, None] + 1j * y[None, :]).ravel()
        self.w2 = (wx[:, None] * wy[None, :]).ravel()
        cols = []
        for a in self.labels:
            for b in self.labels:
                cols.append(wigner_dyad_kernel(a, b, z))
        phi = np.stack(cols, axis=1)  # (n^2, 4), dyad index (ket, bra)
        self.phi = phi
        self.phi_re = np.ascontiguousarray(phi.real)
        self.phi_im = np.ascontiguousarray(phi.imag)
        even, odd = cat_kets(gamma)
        self.cat_coeffs = np.array(
            [[even.terms[0][0], even.terms[1][0]], [odd.terms[0][0], odd.terms[1][0]]],
            dtype=complex,
        )
        self.block = 4096

    def coherent_coeffs(self, qubit_mat: np.ndarray) -> np.ndarray:
        """4x4 coherent-dyad coefficients (mode-1 dyads by mode-2 dyads)."""
        e = self.cat_coeffs
        m4 = qubit_mat.reshape(2, 2, 2, 2)
        c = np.einsum("ijkl,is,ju,kt,lv->sutv", m4, e, e, e.conj(), e.conj())
        # mode-1 dyad index (s, t), mode-2 dyad index (u, v)
        return c.transpose(0, 2, 1, 3).reshape(4, 4)

    def negativity(self, coeff: np.ndarray) -> float:
        x = self.phi @ coeff  # (n^2, 4) complex
        a = np.empty((x.shape[0], 8))
        a[:, :4] = x.real
        a[:, 4:] = x.imag
        b = np.empty((self.phi.shape[0], 8))
        b[:, :4] = self.phi_re
        b[:, 4:] = -self.phi_im
        total = 0.0
        for start in range(0, a.shape[0], self.block):
            w_block = a[start : start + self.block] @ b.T
            np.abs(w_block, out=w_block)
            total += float(np.dot(self.w2[start : start + self.block], w_block @ self.w2))
        return max(total - 1.0, 0.0)


class _FeasibilityProbe:
    """Sign check of the transformed marginal Wigner functions."""

    def __init__(self, gamma: complex, half_width: float):
        self.labels = (complex(gamma), -complex(gamma))
        axis = np.linspace(-half_width, half_width, PROBE_POINTS)
        z = (axis[:, None] + 1j * axis[None, :]).ravel()
        cols = [wigner_dyad_kernel(a, b, z) for a in self.labels for b in self.labels]
        self.phi = np.stack(cols, axis=1)
        even, odd = cat_kets(gamma)
        self.cat_coeffs = np.array(
            [[even.terms[0][0], even.terms[1][0]], [odd.terms[0][0], odd.terms[1][0]]],
            dtype=complex,
        )

    def marginal_ok(self, marginal_2x2: np.ndarray) -> bool:
        e = self.cat_coeffs
        c = np.einsum("ik,is,kt->st", marginal_2x2, e, e.conj()).ravel()
        values = (self.phi @ c).real
        return float(values.min()) >= -CLASSICALITY_TOL


def _marginals(qubit_mat: np.ndarray):
    r = qubit_mat.reshape(2, 2, 2, 2)
    return np.einsum("abcb->ac", r), np.einsum("abad->bd", r)


def min_negativity(
    rho: DyadOperator,
    gamma: complex,
    opt: OptimizerSpec | None = None,
    quad: QuadratureSpec | None = None,
) -> MinNegativityResult:
    """Minimize the negativity volume over feasible local cat-subspace unitaries.

    Feasibility means both transformed marginals keep nonnegative Wigner
    functions (probe-grid check).  Returns the refined minimum, its angles
    (ties resolve to the smallest parameter norm), and a flag that is False
    when no candidate was feasible, in which case the untransformed
    negativity is reported.
    """
    if opt is None:
        opt = OptimizerSpec()
    gamma = complex(gamma)
    half_width = abs(gamma) + 4.0 if quad is None else quad.half_width
    refine_nodes = opt.refine_nodes if quad is None else quad.nodes

    base = qubit_matrix(rho, gamma).matrix
    probe = _FeasibilityProbe(gamma, abs(gamma) + 4.0)
    coarse = _NegativityEngine(gamma, half_width, opt.coarse_nodes)
    fine = _NegativityEngine(gamma, half_width, refine_nodes)

    unitary_cache: dict[tuple, np.ndarray] = {}

    def unitary(theta, phi, psi):
        key = (round(theta, 12), round(phi, 12), round(psi, 12))
        if key not in unitary_cache:
            unitary_cache[key] = cat_subspace_unitary(theta, phi, psi)
        return unitary_cache[key]

    def transformed(angles):
        u = np.kron(unitary(*angles[:3]), unitary(*angles[3:]))
        return u @ base @ u.conj().T

    def evaluate(engine, angles, cache=None):
        mat = transformed(angles)
        ma, mb = _marginals(mat)
        if not (probe.marginal_ok(ma) and probe.marginal_ok(mb)):
            return math.inf
        coeff = engine.coherent_coeffs(mat)
        if cache is not None:
            key = np.round(coeff, 10).tobytes()
            if key in cache:
                return cache[key]
            value = engine.negativity(coeff)
            cache[key] = value
            return value
        return engine.negativity(coeff)

    p = opt.points_per_angle
    thetas = np.linspace(0.0, math.pi / 2.0, p)
    turns = np.linspace(0.0, 2.0 * math.pi, p, endpoint=False)
    coarse_cache: dict[bytes, float] = {}
    candidates = []
    for ta in thetas:
        for fa in turns:
            for sa in turns:
                for tb in thetas:
                    for fb in turns:
                        for sb in turns:
                            angles = (ta, fa, sa, tb, fb, sb)
                            val = evaluate(coarse, angles, coarse_cache)
                            if math.isfinite(val):
                                candidates.append((val, angles))
    raw = negativity_volume(
        rho, QuadratureSpec(half_width, refine_nodes)
    ).value
    if not candidates:
        return MinNegativityResult(raw, IDENTITY_PARAMS, False, raw)

    candidates.sort(key=lambda t: (t[0], float(np.linalg.norm(t[1])), t[1]))
    seeds = candidates[: opt.refine_seeds]

    best_val = math.inf
    best_angles = seeds[0][1]
    for _, angles in seeds:
        res = minimize(
            lambda a: evaluate(fine, tuple(a)),
            np.array(angles),
            method="Nelder-Mead",
            options={
                "xatol": opt.xatol,
                "fatol": opt.fatol,
                "maxfev": opt.maxfev,
                "initial_simplex": _initial_simplex(np.array(angles), 0.15),
            },
        )
        val = float(res.fun)
        cand = tuple(float(a) for a in res.x)
        if not math.isfinite(val):
            val = evaluate(fine, angles)
            cand = angles
        better = val < best_val - 1e-9
        tie = abs(val - best_val) <= 1e-4
        if better or (
            tie and np.linalg.norm(cand) < np.linalg.norm(best_angles)
        ):
            best_val, best_angles = val, cand
    return MinNegativityResult(
        min(best_val, raw),
        LocalUnitaryParams(*best_angles),
        True,
        raw,
    )


def _initial_simplex(center: np.ndarray, scale: float) -> np.ndarray:
    simplex = np.tile(center, (center.size + 1, 1))
    for i in range(center.size):
        simplex[i + 1, i] += scale
    return simplex
