"""Photon statistics: Mandel Q (per mode and mode-optimized) and squeezing.

The mode-optimized Mandel parameter minimizes the normalized photon-number
variance over all normalized linear mode combinations
``a(u, v) = conj(u) a1 + conj(v) a2`` with ``|u|^2 + |v|^2 = 1``; a global
phase is irrelevant, so the search space is the two angles of
``u = cos(theta)``, ``v = exp(i phi) sin(theta)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .algebra import DyadOperator, normal_moment
from .gaussian import covariance

__all__ = [
    "VanishingPhotonNumberError",
    "SU2ModeParams",
    "mandel_q_mode",
    "mandel_q_su2",
    "squeezing_d",
]

# Mean photon numbers below this leave Q undefined.
PHOTON_NUMBER_FLOOR = 1e-14


class VanishingPhotonNumberError(ValueError):
    """Mandel Q is undefined for a vanishing mean photon number."""


@dataclass(frozen=True)
class SU2ModeParams:
    """Angles of the mode superposition ``(cos theta, e^{i phi} sin theta)``."""

    theta: float
    phi: float

    def amplitudes(self) -> tuple[complex, complex]:
        return (
            complex(math.cos(self.theta)),
            complex(math.cos(self.phi), math.sin(self.phi)) * math.sin(self.theta),
        )


def mandel_q_mode(rho: DyadOperator, mode: int = 0) -> float:
    """Normalized photon-number variance excess of one mode.

    ``Q = (<n(n-1)> - <n>^2) / <n>`` written with normally ordered moments;
    negative values signal sub-Poissonian statistics.
    """
    if mode not in range(rho.modes):
        raise ValueError(f"invalid mode {mode} for a {rho.modes}-mode state")
    if rho.modes == 1 or mode == 0:
        nbar = normal_moment(rho, 1, 1).real
        n2 = normal_moment(rho, 2, 2).real
    else:
        nbar = normal_moment(rho, 0, 0, 1, 1).real
        n2 = normal_moment(rho, 0, 0, 2, 2).real
    if nbar <= PHOTON_NUMBER_FLOOR:
        raise VanishingPhotonNumberError(
            f"mean photon number {nbar:.3e} too small for Mandel Q"
        )
    return (n2 - nbar * nbar) / nbar


def _su2_moments(rho: DyadOperator):
    """All second- and fourth-order moments entering Q of a mixed mode."""

    def mom(m1, n1, m2, n2):
        return normal_moment(rho, m1, n1, m2, n2)

    return {
        "n11": mom(1, 1, 0, 0),
        "n22": mom(0, 0, 1, 1),
        "n12": mom(1, 0, 0, 1),  # <a1^dag a2>
        "m2200": mom(2, 2, 0, 0),
        "m2101": mom(2, 1, 0, 1),
        "m2002": mom(2, 0, 0, 2),
        "m1210": mom(1, 2, 1, 0),
        "m1111": mom(1, 1, 1, 1),
        "m1012": mom(1, 0, 1, 2),
        "m0220": mom(0, 2, 2, 0),
        "m0121": mom(0, 1, 2, 1),
        "m0022": mom(0, 0, 2, 2),
    }


def _q_of_amplitudes(mo, u, v):
    """Q for mode amplitudes ``(u, v)``; NaN where the denominator vanishes."""
    uu = np.abs(u) ** 2
    vv = np.abs(v) ** 2
    uc, vc = np.conj(u), np.conj(v)
    nbar = (uu * mo["n11"] + vv * mo["n22"] + 2.0 * (u * vc * mo["n12"]).real).real
    g = (
        uu * uu * mo["m2200"]
        + 2.0 * u * u * uc * vc * mo["m2101"]
        + u * u * vc * vc * mo["m2002"]
        + 2.0 * u * v * uc * uc * mo["m1210"]
        + 4.0 * uu * vv * mo["m1111"]
        + 2.0 * u * v * vc * vc * mo["m1012"]
        + v * v * uc * uc * mo["m0220"]
        + 2.0 * v * v * uc * vc * mo["m0121"]
        + vv * vv * mo["m0022"]
    ).real
    nbar = np.asarray(nbar, dtype=float)
    g = np.asarray(g, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        q = np.where(nbar > PHOTON_NUMBER_FLOOR, (g - nbar * nbar) / nbar, np.nan)
    return q


def _canonical_params(theta: float, phi: float) -> SU2ModeParams:
    """Fold arbitrary angles into theta in [0, pi/2], phi in [0, 2 pi)."""
    u = math.cos(theta)
    v = complex(math.cos(phi), math.sin(phi)) * math.sin(theta)
    if abs(u) > 1e-12:
        v *= (u / abs(u)).conjugate() if u < 0 else 1.0
        u = abs(u)
    theta_c = math.atan2(abs(v), abs(u))
    phi_c = math.atan2(v.imag, v.real) % (2.0 * math.pi) if abs(v) > 1e-12 else 0.0
    return SU2ModeParams(theta_c, phi_c)


def mandel_q_su2(
    rho: DyadOperator,
    grid_shape: tuple[int, int] = (64, 64),
    refine_tol: float = 1e-7,
) -> tuple[float, SU2ModeParams]:
    """Minimum Mandel Q over normalized mode superpositions.

    A ``grid_shape`` scan over ``(theta, phi)`` seeds a Nelder-Mead
    refinement; grid points with vanishing denominator are skipped and ties
    resolve to the smallest theta.
    """
    if rho.modes != 2:
        raise ValueError("mode-optimized Q needs a 2-mode state")
    mo = _su2_moments(rho)
    thetas = np.linspace(0.0, math.pi / 2.0, grid_shape[0])
    phis = np.linspace(0.0, 2.0 * math.pi, grid_shape[1], endpoint=False)
    tg, pg = np.meshgrid(thetas, phis, indexing="ij")
    u = np.cos(tg)
    v = np.exp(1j * pg) * np.sin(tg)
    q = _q_of_amplitudes(mo, u, v)
    if np.all(np.isnan(q)):
        raise VanishingPhotonNumberError("no mode superposition has photons")
    best = np.nanmin(q)
    # Ties resolve to the smallest theta (then smallest phi).
    ti, pi_ = min(
        zip(*np.where(q <= best + 1e-12)), key=lambda ij: (thetas[ij[0]], phis[ij[1]])
    )
    seed = np.array([thetas[ti], phis[pi_]])

    def objective(ang):
        val = _q_of_amplitudes(
            mo, math.cos(ang[0]), complex(math.cos(ang[1]), math.sin(ang[1])) * math.sin(ang[0])
        )
        return float(val) if np.isfinite(val) else 1e6

    res = minimize(
        objective,
        seed,
        method="Nelder-Mead",
        options={"xatol": refine_tol, "fatol": 1e-13, "maxiter": 400},
    )
    if res.fun <= best:
        best = float(res.fun)
        params = _canonical_params(res.x[0], res.x[1])
    else:
        params = _canonical_params(seed[0], seed[1])
    return best, params


def squeezing_d(rho: DyadOperator) -> tuple[float, float]:
    """Two-mode quadrature squeezing markers ``D_1, D_2``.

    ``D_j = 4 Var(X_j) - 1`` for the superposition quadratures
    ``X_1 = (q_1 + q_2)/2`` and ``X_2 = (p_1 + p_2)/2``; a negative value
    signals squeezing of that quadrature.
    """
    cov = covariance(rho)
    s = cov.sigma
    d1 = s[0, 0] + s[2, 2] + 2.0 * s[0, 2] - 1.0
    d2 = s[1, 1] + s[3, 3] + 2.0 * s[1, 3] - 1.0
    return float(d1), float(d2)
