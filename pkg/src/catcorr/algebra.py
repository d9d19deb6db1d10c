"""Exact algebra over finite superpositions of coherent states.

Every state handled by this package is a finite weighted sum of coherent
dyads ``|alpha><beta|`` (one label per mode).  Overlaps of coherent states
are known in closed form, so traces, normally ordered moments, spectra and
entropies all reduce to small dense linear algebra over the span of the
participating labels -- no Fock-space truncation is involved anywhere.

Conventions
-----------
Amplitudes are dimensionless complex numbers.  The overlap of two coherent
states is ``<beta|alpha> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(beta)*alpha)``,
so the two components of a cat state satisfy
``<gamma|-gamma> = exp(-2|gamma|^2)``.

All values are immutable after construction and every operation is a pure
function, so states may be shared freely between threads.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "DegenerateOddCatError",
    "IllConditionedGramError",
    "SupportLeakageError",
    "ModeKet",
    "TwoModeKet",
    "DyadOperator",
    "overlap",
    "cat_kets",
    "product_ket",
    "ket_overlap",
    "dyad_from_ket",
    "mixture_to_dyads",
    "trace",
    "purity",
    "partial_trace",
    "spectrum",
    "von_neumann_entropy",
    "normal_moment",
    "operators_equal",
    "is_hermitian",
    "validate_state",
]

# Labels closer than ~1e-12 denote the same span vector.
MERGE_DECIMALS = 12
# Merged dyad coefficients below this magnitude are dropped.
PRUNE_TOL = 1e-15
# Relative rank cutoff for the span Gram matrix; keeps spectra stable when
# labels {gamma, -gamma} become numerically dependent as gamma -> 0.
GRAM_RANK_CUTOFF = 1e-12
HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10


class DegenerateOddCatError(ValueError):
    """The odd cat normalization 1/sqrt(2(1 - <gamma|-gamma>)) diverged."""


class SupportLeakageError(ValueError):
    """An operator had weight outside the two-dimensional cat subspace."""


class IllConditionedGramError(ValueError):
    """The span Gram matrix is numerically indefinite."""


def _require_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"amplitude must be finite, got {z!r}")
    return z


def overlap(alpha: complex, beta: complex) -> complex:
    """Overlap ``<beta|alpha>`` of two coherent states.

    Parameters
    ----------
    alpha : complex
        Label of the ket.
    beta : complex
        Label of the bra.
    """
    alpha = _require_finite(alpha)
    beta = _require_finite(beta)
    return cmath.exp(
        -0.5 * (alpha.real**2 + alpha.imag**2)
        - 0.5 * (beta.real**2 + beta.imag**2)
        + beta.conjugate() * alpha
    )


def _braket(bra_label: complex, ket_label: complex) -> complex:
    """``<bra_label|ket_label>`` -- `overlap` with the readable argument order."""
    return overlap(ket_label, bra_label)


@dataclass(frozen=True)
class ModeKet:
    """Single-mode ket ``sum_i c_i |alpha_i>`` as (coefficient, label) terms."""

    terms: tuple[tuple[complex, complex], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("ModeKet needs at least one term")
        for c, a in self.terms:
            _require_finite(c)
            _require_finite(a)

    def norm_squared(self) -> float:
        total = 0.0 + 0.0j
        for ci, ai in self.terms:
            for cj, aj in self.terms:
                total += ci.conjugate() * cj * _braket(ai, aj)
        return float(total.real)

    def normalized(self) -> "ModeKet":
        n2 = self.norm_squared()
        if n2 <= 0.0:
            raise ValueError("ket has non-positive squared norm")
        s = 1.0 / math.sqrt(n2)
        return ModeKet(tuple((c * s, a) for c, a in self.terms))


@dataclass(frozen=True)
class TwoModeKet:
    """Two-mode ket ``sum_i c_i |alpha_i>|beta_i>``."""

    terms: tuple[tuple[complex, complex, complex], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("TwoModeKet needs at least one term")
        for c, a, b in self.terms:
            _require_finite(c)
            _require_finite(a)
            _require_finite(b)

    def norm_squared(self) -> float:
        total = 0.0 + 0.0j
        for ci, ai, bi in self.terms:
            for cj, aj, bj in self.terms:
                total += ci.conjugate() * cj * _braket(ai, aj) * _braket(bi, bj)
        return float(total.real)

    def normalized(self) -> "TwoModeKet":
        n2 = self.norm_squared()
        if n2 <= 0.0:
            raise ValueError("ket has non-positive squared norm")
        s = 1.0 / math.sqrt(n2)
        return TwoModeKet(tuple((c * s, a, b) for c, a, b in self.terms))


def product_ket(ket_a: ModeKet, ket_b: ModeKet) -> TwoModeKet:
    """Tensor product of two single-mode kets."""
    return TwoModeKet(
        tuple(
            (ca * cb, la, lb)
            for ca, la in ket_a.terms
            for cb, lb in ket_b.terms
        )
    )


def ket_overlap(bra: ModeKet, ket: ModeKet) -> complex:
    """``<bra|ket>`` for two single-mode kets."""
    total = 0.0 + 0.0j
    for cb, lb in bra.terms:
        for ck, lk in ket.terms:
            total += cb.conjugate() * ck * _braket(lb, lk)
    return total


def cat_kets(gamma: complex) -> tuple[ModeKet, ModeKet]:
    """Normalized even and odd superpositions of ``|gamma>`` and ``|-gamma>``.

    The odd superposition degenerates as gamma -> 0 (its normalization
    diverges); callers wanting that limit must use the documented Fock-limit
    constructors in :mod:`catcorr.catalog`.
    """
    gamma = _require_finite(gamma)
    big_gamma = _braket(-gamma, gamma).real  # <gamma|-gamma>, real positive
    if 1.0 - big_gamma < 1e-14:
        raise DegenerateOddCatError(
            "odd superposition of |gamma>, |-gamma> is degenerate for "
            f"gamma={gamma!r}; use the Fock-limit constructor instead"
        )
    n_even = 1.0 / math.sqrt(2.0 * (1.0 + big_gamma))
    n_odd = 1.0 / math.sqrt(2.0 * (1.0 - big_gamma))
    even = ModeKet(((n_even, gamma), (n_even, -gamma)))
    odd = ModeKet(((n_odd, gamma), (-n_odd, -gamma)))
    return even, odd


@dataclass(frozen=True)
class DyadOperator:
    """Operator ``sum_k c_k |a_k><b_k|`` (tensor factors for two modes).

    ``terms`` holds ``(coefficient, ket_labels, bra_labels)`` tuples where the
    label tuples have one entry per mode.  Physical states are Hermitian with
    unit trace; use :func:`validate_state` to check both.
    """

    modes: int
    terms: tuple[tuple[complex, tuple[complex, ...], tuple[complex, ...]], ...]

    def __post_init__(self):
        if self.modes not in (1, 2):
            raise ValueError("only 1- or 2-mode operators are supported")
        for c, ket, bra in self.terms:
            if len(ket) != self.modes or len(bra) != self.modes:
                raise ValueError("label tuple length must equal mode count")
            _require_finite(c)
            for z in (*ket, *bra):
                _require_finite(z)


def _label_key(labels: Iterable[complex]) -> tuple:
    return tuple(
        (round(z.real, MERGE_DECIMALS) + 0.0, round(z.imag, MERGE_DECIMALS) + 0.0)
        for z in labels
    )


def _merge_terms(modes, raw_terms, prune: float = PRUNE_TOL):
    """Merge dyad terms with coinciding labels and drop negligible ones."""
    acc: dict[tuple, list] = {}
    for c, ket, bra in raw_terms:
        key = (_label_key(ket), _label_key(bra))
        slot = acc.get(key)
        if slot is None:
            acc[key] = [complex(c), tuple(ket), tuple(bra)]
        else:
            slot[0] += complex(c)
    merged = [
        (c, ket, bra) for c, ket, bra in acc.values() if abs(c) > prune
    ]
    # Deterministic term order regardless of construction history.
    merged.sort(key=lambda t: (_label_key(t[1]), _label_key(t[2])))
    return DyadOperator(modes, tuple(merged))


def dyad_from_ket(ket: ModeKet | TwoModeKet) -> DyadOperator:
    """Projector ``|ket><ket|`` of a normalized ket, in merged dyad form."""
    ket = ket.normalized()
    if isinstance(ket, ModeKet):
        raw = [
            (ci * cj.conjugate(), (ai,), (aj,))
            for ci, ai in ket.terms
            for cj, aj in ket.terms
        ]
        return _merge_terms(1, raw)
    raw = [
        (ci * cj.conjugate(), (a1, b1), (a2, b2))
        for ci, a1, b1 in ket.terms
        for cj, a2, b2 in ket.terms
    ]
    return _merge_terms(2, raw)


def mixture_to_dyads(
    components: Sequence[tuple[float, ModeKet | TwoModeKet]],
) -> DyadOperator:
    """Expand ``sum_k p_k |psi_k><psi_k|`` into a merged dyad operator.

    Weights must be nonnegative and sum to one within 1e-10; each ket is
    normalized before expansion and the result is rescaled so the trace is
    exactly one.
    """
    if not components:
        raise ValueError("mixture needs at least one component")
    weights = [float(w) for w, _ in components]
    for w in weights:
        if w < -1e-12:
            raise ValueError(f"negative mixture weight {w}")
    total_w = sum(weights)
    if total_w <= 0.0:
        raise ValueError("mixture weights sum to zero")
    if abs(total_w - 1.0) > 1e-10:
        raise ValueError(f"mixture weights sum to {total_w}, expected 1")
    modes = 1 if isinstance(components[0][1], ModeKet) else 2
    raw = []
    for w, ket in components:
        if w <= 0.0:
            continue
        part = dyad_from_ket(ket)
        if part.modes != modes:
            raise ValueError("mixture mixes 1- and 2-mode kets")
        raw.extend((w * c, k, b) for c, k, b in part.terms)
    rho = _merge_terms(modes, raw)
    tr = trace(rho).real
    if abs(tr - 1.0) > 1e-8:
        raise ValueError(f"mixture trace {tr} too far from 1")
    return _merge_terms(modes, [(c / tr, k, b) for c, k, b in rho.terms])


def trace(rho: DyadOperator) -> complex:
    """Trace ``sum_k c_k prod_m <b_km|a_km>``."""
    total = 0.0 + 0.0j
    for c, ket, bra in rho.terms:
        factor = c
        for a, b in zip(ket, bra):
            factor *= _braket(b, a)
        total += factor
    return total


def purity(rho: DyadOperator) -> float:
    """``Tr(rho^2)`` via pairwise coherent overlaps."""
    total = 0.0 + 0.0j
    for ck, ketk, brak in rho.terms:
        for cl, ketl, bral in rho.terms:
            factor = ck * cl
            for m in range(rho.modes):
                factor *= _braket(brak[m], ketl[m]) * _braket(bral[m], ketk[m])
            total += factor
    return float(total.real)


def partial_trace(rho: DyadOperator, keep: int) -> DyadOperator:
    """Trace out one mode of a two-mode operator, keeping mode ``keep``.

    ``Tr_B(|a><b| x |mu><nu|) = <nu|mu> |a><b|`` and symmetrically for
    tracing out mode 0.
    """
    if rho.modes != 2:
        raise ValueError("partial_trace needs a 2-mode operator")
    if keep not in (0, 1):
        raise ValueError(f"invalid mode id {keep!r}; expected 0 or 1")
    drop = 1 - keep
    raw = [
        (c * _braket(bra[drop], ket[drop]), (ket[keep],), (bra[keep],))
        for c, ket, bra in rho.terms
    ]
    return _merge_terms(1, raw)


def _span_basis(rho: DyadOperator):
    """Distinct label tuples spanning range and support of ``rho``."""
    keys: dict[tuple, tuple[complex, ...]] = {}
    for _, ket, bra in rho.terms:
        for labels in (ket, bra):
            keys.setdefault(_label_key(labels), labels)
    ordered = sorted(keys.items())
    return [labels for _, labels in ordered]


def _gram_matrix(basis, modes):
    k = len(basis)
    gram = np.empty((k, k), dtype=complex)
    for i, phi_i in enumerate(basis):
        for j, phi_j in enumerate(basis):
            g = 1.0 + 0.0j
            for m in range(modes):
                g *= _braket(phi_i[m], phi_j[m])
            gram[i, j] = g
    return gram


def spectrum(rho: DyadOperator, rank_cutoff: float = GRAM_RANK_CUTOFF) -> np.ndarray:
    """Eigenvalues of ``rho`` restricted to the span of its labels.

    With basis vectors ``phi_m`` (not orthogonal), ``rho = sum C_mn
    |phi_m><phi_n|``; the nonzero eigenvalues of ``rho`` coincide with those
    of the Hermitian matrix ``G^(1/2) C G^(1/2)`` built from the Gram matrix
    ``G_mn = <phi_m|phi_n>``.  Gram directions below ``rank_cutoff`` relative
    to the largest Gram eigenvalue are discarded.

    Returns eigenvalues sorted in descending order, with values in
    ``[-1e-10, 0)`` clamped to zero.
    """
    basis = _span_basis(rho)
    index = {_label_key(b): i for i, b in enumerate(basis)}
    k = len(basis)
    coeff = np.zeros((k, k), dtype=complex)
    for c, ket, bra in rho.terms:
        coeff[index[_label_key(ket)], index[_label_key(bra)]] += c
    gram = _gram_matrix(basis, rho.modes)
    gram_eigs, gram_vecs = np.linalg.eigh(gram)
    top = gram_eigs[-1]
    if top <= 0.0:
        raise IllConditionedGramError("Gram matrix has no positive direction")
    if gram_eigs[0] < -1e-10 * top:
        raise IllConditionedGramError(
            f"Gram matrix indefinite: min eigenvalue {gram_eigs[0]:.3e}"
        )
    kept = gram_eigs > rank_cutoff * top
    root = gram_vecs[:, kept] * np.sqrt(np.clip(gram_eigs[kept], 0.0, None))
    # root has shape (k, r); eigenvalues of root^H C root match rho's.
    small = root.conj().T @ coeff @ root
    eigs = np.linalg.eigvalsh(0.5 * (small + small.conj().T))
    if eigs.size and eigs[0] < -1e-8:
        raise ValueError(f"operator is not positive semidefinite: {eigs[0]:.3e}")
    eigs = np.where((eigs < 0.0) & (eigs >= -1e-10), 0.0, eigs)
    return np.sort(eigs)[::-1]


def von_neumann_entropy(eigenvalues, base=2) -> float:
    """``-sum p log p`` with ``0 log 0 = 0``, in base 2 or base e.

    ``base`` accepts ``2`` (bits, the default for information quantities)
    or ``"e"`` (nats, used by the Gaussian reference entropy).
    """
    if base == 2:
        log = np.log2
    elif base in ("e", math.e):
        log = np.log
    else:
        raise ValueError(f"unsupported entropy base {base!r}")
    p = np.asarray(eigenvalues, dtype=float)
    p = p[p > 0.0]
    if p.size == 0:
        return 0.0
    return float(-(p * log(p)).sum())


def normal_moment(
    rho: DyadOperator, m1: int, n1: int, m2: int = 0, n2: int = 0
) -> complex:
    """Normally ordered moment ``Tr(rho a1^dag^m1 a1^n1 a2^dag^m2 a2^n2)``.

    Uses ``<b|a^dag^m a^n|a> = conj(b)^m a^n <b|a>`` term by term; exponents
    for an absent second mode must be zero.
    """
    for e in (m1, n1, m2, n2):
        if e < 0:
            raise ValueError("moment exponents must be nonnegative")
    if rho.modes == 1 and (m2 or n2):
        raise ValueError("mode-2 exponents must be 0 for a single-mode state")
    exps = ((m1, n1), (m2, n2))
    total = 0.0 + 0.0j
    for c, ket, bra in rho.terms:
        factor = c
        for m in range(rho.modes):
            em, en = exps[m]
            factor *= bra[m].conjugate() ** em * ket[m] ** en * _braket(bra[m], ket[m])
        total += factor
    return total


def is_hermitian(rho: DyadOperator, tol: float = HERMITICITY_TOL) -> bool:
    """Whether the merged term multiset is invariant under dagger."""
    acc: dict[tuple, complex] = {}
    for c, ket, bra in _merge_terms(rho.modes, rho.terms, prune=0.0).terms:
        acc[(_label_key(ket), _label_key(bra))] = c
    for (kk, kb), c in acc.items():
        if abs(acc.get((kb, kk), 0.0) - c.conjugate()) > tol:
            return False
    return True


def validate_state(rho: DyadOperator, trace_tol: float = TRACE_TOL) -> None:
    """Raise unless ``rho`` is Hermitian with unit (real) trace."""
    if not is_hermitian(rho):
        raise ValueError("operator is not Hermitian")
    tr = trace(rho)
    if abs(tr.imag) > trace_tol or abs(tr.real - 1.0) > trace_tol:
        raise ValueError(f"operator trace {tr} is not 1")


def operators_equal(
    lhs: DyadOperator, rhs: DyadOperator, tol: float = 1e-10
) -> bool:
    """Term-by-term equality of two dyad operators after merging."""
    if lhs.modes != rhs.modes:
        return False
    a = {( _label_key(k), _label_key(b)): c for c, k, b in _merge_terms(lhs.modes, lhs.terms, prune=0.0).terms}
    b = {( _label_key(k), _label_key(b)): c for c, k, b in _merge_terms(rhs.modes, rhs.terms, prune=0.0).terms}
    for key in a.keys() | b.keys():
        if abs(a.get(key, 0.0) - b.get(key, 0.0)) > tol:
            return False
    return True
