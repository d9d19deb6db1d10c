"""Constructors for the named two-mode states and their local transformations.

Six two-mode mixtures are built from coherent components ``|gamma>``,
``|-gamma>`` and their even/odd superpositions: two four-component mixtures
(``rho_pp``, ``rho_pm``) that share marginals but differ globally, and the
rank-two pairs ``sigma_q_*`` (coherent projector mixtures) and ``sigma_c_*``
(cat projector mixtures).  A local channel maps ``sigma_c`` to ``sigma_q``,
and ``S_x`` (the cat-basis bit flip) swaps the two ``sigma_c`` states.

All transformations stay inside the coherent-dyad representation by
expanding cat-basis operators with the exact coefficients
``sqrt((1 +- <gamma|-gamma>)/2)``.
"""

from __future__ import annotations

import enum

import numpy as np

from .algebra import (
    DyadOperator,
    ModeKet,
    SupportLeakageError,
    TwoModeKet,
    _merge_terms,
    cat_kets,
    ket_overlap,
    mixture_to_dyads,
    partial_trace,
    product_ket,
    trace,
)
from .qubit import QubitDensityMatrix

__all__ = [
    "StateId",
    "build",
    "channel_phi",
    "apply_local_sx",
    "apply_cat_subspace_unitaries",
    "dyads_from_qubit_matrix",
    "fock_limit_qubit_matrix",
]


class StateId(enum.Enum):
    """Identifiers of the catalog states."""

    RHO_PP = "pp"
    RHO_PM = "pm"
    SIGMA_Q_PP = "sigma_q_pp"
    SIGMA_Q_PM = "sigma_q_pm"
    SIGMA_C_PP = "sigma_c_pp"
    SIGMA_C_PM = "sigma_c_pm"
    MARGINAL = "marginal"
    COHERENT_PRODUCT = "coherent_product"
    EVEN_CAT = "even_cat"
    ODD_CAT = "odd_cat"

    @classmethod
    def from_name(cls, name: str) -> "StateId":
        for member in cls:
            if member.value == name or member.name.lower() == name.lower():
                return member
        raise ValueError(f"unknown state {name!r}")


def _coherent(label: complex) -> ModeKet:
    return ModeKet(((1.0 + 0.0j, complex(label)),))


def build(state: StateId, gamma: complex) -> DyadOperator:
    """Normalized dyad operator for a catalog state at amplitude ``gamma``.

    States involving the odd superposition require ``|gamma| > 0``
    (a degenerate-cat error propagates otherwise).
    """
    gamma = complex(gamma)
    plus, minus = _coherent(gamma), _coherent(-gamma)
    if state in (StateId.RHO_PP, StateId.RHO_PM, StateId.SIGMA_C_PP, StateId.SIGMA_C_PM,
                 StateId.MARGINAL, StateId.EVEN_CAT, StateId.ODD_CAT):
        even, odd = cat_kets(gamma)
    if state is StateId.RHO_PP:
        return mixture_to_dyads(
            [
                (0.25, product_ket(plus, plus)),
                (0.25, product_ket(minus, minus)),
                (0.25, product_ket(even, even)),
                (0.25, product_ket(odd, odd)),
            ]
        )
    if state is StateId.RHO_PM:
        return mixture_to_dyads(
            [
                (0.25, product_ket(plus, minus)),
                (0.25, product_ket(minus, plus)),
                (0.25, product_ket(even, odd)),
                (0.25, product_ket(odd, even)),
            ]
        )
    if state is StateId.SIGMA_Q_PP:
        return mixture_to_dyads(
            [(0.5, product_ket(plus, plus)), (0.5, product_ket(minus, minus))]
        )
    if state is StateId.SIGMA_Q_PM:
        return mixture_to_dyads(
            [(0.5, product_ket(plus, minus)), (0.5, product_ket(minus, plus))]
        )
    if state is StateId.SIGMA_C_PP:
        return mixture_to_dyads(
            [(0.5, product_ket(even, even)), (0.5, product_ket(odd, odd))]
        )
    if state is StateId.SIGMA_C_PM:
        return mixture_to_dyads(
            [(0.5, product_ket(even, odd)), (0.5, product_ket(odd, even))]
        )
    if state is StateId.MARGINAL:
        return partial_trace(build(StateId.RHO_PP, gamma), keep=0)
    if state is StateId.COHERENT_PRODUCT:
        return mixture_to_dyads([(1.0, product_ket(plus, plus))])
    if state is StateId.EVEN_CAT:
        return mixture_to_dyads([(1.0, even)])
    if state is StateId.ODD_CAT:
        return mixture_to_dyads([(1.0, odd)])
    raise ValueError(f"unknown state {state!r}")


def _cat_overlaps(gamma: complex):
    """Overlaps ``<even|.>``, ``<odd|.>`` against a coherent label."""
    even, odd = cat_kets(gamma)

    def against(label: complex):
        ket = _coherent(label)
        return ket_overlap(even, ket), ket_overlap(odd, ket)

    return even, odd, against


def channel_phi(rho: DyadOperator, gamma: complex) -> DyadOperator:
    """Apply per mode the channel mapping cat projectors to coherent ones.

    ``Phi(X) = |g><e| X |e><g| + |-g><o| X |o><-g|`` written with the cat
    basis ``{|e>, |o>}``; applied as a product channel on both modes.  The
    channel is trace preserving only on the cat subspace, so a trace change
    beyond 1e-10 raises :class:`SupportLeakageError`.
    """
    if rho.modes != 2:
        raise ValueError("the product channel acts on 2-mode states")
    gamma = complex(gamma)
    _, _, against = _cat_overlaps(gamma)
    targets = (gamma, -gamma)
    raw = []
    for c, ket, bra in rho.terms:
        factors = []
        for m in range(2):
            e_k, o_k = against(ket[m])
            e_b, o_b = against(bra[m])
            # weight of |target_s><target_s| from this mode's dyad
            factors.append((e_k * e_b.conjugate(), o_k * o_b.conjugate()))
        for s1 in range(2):
            for s2 in range(2):
                weight = c * factors[0][s1] * factors[1][s2]
                raw.append(
                    (weight, (targets[s1], targets[s2]), (targets[s1], targets[s2]))
                )
    out = _merge_terms(2, raw)
    tr = trace(out)
    if abs(tr.real - 1.0) > 1e-10 or abs(tr.imag) > 1e-10:
        raise SupportLeakageError(
            f"channel changed the trace to {tr}; input leaks out of the "
            "cat subspace"
        )
    return out


def apply_cat_subspace_unitaries(
    rho: DyadOperator,
    gamma: complex,
    u_a: np.ndarray | None = None,
    u_b: np.ndarray | None = None,
) -> DyadOperator:
    """Conjugate by local unitaries acting inside the cat subspace.

    ``u_a`` and ``u_b`` are 2x2 matrices in the ``{|e>, |o>}`` basis
    (identity when omitted).  The result stays a finite coherent-dyad
    operator; inputs must be supported on the subspace.
    """
    if rho.modes != 2:
        raise ValueError("local unitaries act on 2-mode states")
    gamma = complex(gamma)
    even, odd, against = _cat_overlaps(gamma)
    # Cat kets written back in the coherent pair (gamma, -gamma).
    cat_coeffs = np.array(
        [[even.terms[0][0], even.terms[1][0]], [odd.terms[0][0], odd.terms[1][0]]],
        dtype=complex,
    )
    labels = (gamma, -gamma)

    def transformed(label: complex, u: np.ndarray | None):
        """Coefficients of U|label> over (|gamma>, |-gamma>)."""
        e_amp, o_amp = against(label)
        cat_amp = np.array([e_amp, o_amp])
        if u is not None:
            cat_amp = u @ cat_amp
        return cat_amp @ cat_coeffs

    cache: dict[tuple, np.ndarray] = {}

    def cached(label: complex, which: int):
        key = (label, which)
        if key not in cache:
            cache[key] = transformed(label, u_a if which == 0 else u_b)
        return cache[key]

    raw = []
    for c, ket, bra in rho.terms:
        ka = cached(ket[0], 0)
        kb = cached(ket[1], 1)
        ba = cached(bra[0], 0).conj()
        bb = cached(bra[1], 1).conj()
        for i, la in enumerate(labels):
            for j, lb in enumerate(labels):
                for k, lc in enumerate(labels):
                    for l, ld in enumerate(labels):
                        w = c * ka[i] * kb[j] * ba[k] * bb[l]
                        raw.append((w, (la, lb), (lc, ld)))
    out = _merge_terms(2, raw)
    tr = trace(out)
    if abs(tr.real - 1.0) > 1e-10 or abs(tr.imag) > 1e-10:
        raise SupportLeakageError(
            f"conjugation changed the trace to {tr}; input leaks out of the "
            "cat subspace"
        )
    return out


SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)


def apply_local_sx(rho: DyadOperator, side: int | str, gamma: complex) -> DyadOperator:
    """Conjugate one side by the cat-basis bit flip ``|e><o| + |o><e|``."""
    side_idx = {0: 0, 1: 1, "A": 0, "B": 1, "a": 0, "b": 1}.get(side)
    if side_idx is None:
        raise ValueError(f"side must be A/B or 0/1, got {side!r}")
    if side_idx == 0:
        return apply_cat_subspace_unitaries(rho, gamma, u_a=SX)
    return apply_cat_subspace_unitaries(rho, gamma, u_b=SX)


def dyads_from_qubit_matrix(matrix: np.ndarray, gamma: complex) -> DyadOperator:
    """Coherent-dyad expansion of a 4x4 matrix given in the cat basis."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (4, 4):
        raise ValueError("expected a 4x4 cat-basis matrix")
    gamma = complex(gamma)
    even, odd = cat_kets(gamma)
    cat_coeffs = np.array(
        [[even.terms[0][0], even.terms[1][0]], [odd.terms[0][0], odd.terms[1][0]]],
        dtype=complex,
    )
    labels = (gamma, -gamma)
    m4 = matrix.reshape(2, 2, 2, 2)  # ket_i ket_j bra_k bra_l
    coeff = np.einsum(
        "ijkl,is,ju,kt,lv->sutv", m4, cat_coeffs, cat_coeffs,
        cat_coeffs.conj(), cat_coeffs.conj(),
    )
    raw = []
    for s in range(2):
        for u in range(2):
            for t in range(2):
                for v in range(2):
                    raw.append(
                        (coeff[s, u, t, v], (labels[s], labels[u]), (labels[t], labels[v]))
                    )
    return _merge_terms(2, raw)


_FOCK_LIMIT = {
    StateId.RHO_PP: np.diag([0.75, 0.0, 0.0, 0.25]),
    StateId.RHO_PM: np.diag([0.5, 0.25, 0.25, 0.0]),
    StateId.SIGMA_Q_PP: np.diag([1.0, 0.0, 0.0, 0.0]),
    StateId.SIGMA_Q_PM: np.diag([1.0, 0.0, 0.0, 0.0]),
    StateId.SIGMA_C_PP: np.diag([0.5, 0.0, 0.0, 0.5]),
    StateId.SIGMA_C_PM: np.diag([0.0, 0.5, 0.5, 0.0]),
}


def fock_limit_qubit_matrix(state: StateId) -> QubitDensityMatrix:
    """Two-qubit matrix of a catalog state in the gamma -> 0 limit.

    The cat basis degenerates at gamma = 0; the limiting basis is the
    vacuum/single-photon pair, in which the catalog states stay diagonal
    mixtures.  Only qubit-side quantities are meaningful in this limit.
    """
    try:
        matrix = _FOCK_LIMIT[state]
    except KeyError:
        raise ValueError(f"no two-qubit limit for {state!r}") from None
    return QubitDensityMatrix(matrix.astype(complex), 0.0 + 0.0j)
