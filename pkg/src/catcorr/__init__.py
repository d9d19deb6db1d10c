"""Nonclassicality and quantum correlations of two-mode cat-state mixtures.

The package represents every state as a finite sum of coherent dyads, which
keeps overlaps, moments, spectra, phase-space functions, and the two-qubit
embedding exact.  See the README for the CLI front end.
"""

from .algebra import (
    DegenerateOddCatError,
    DyadOperator,
    IllConditionedGramError,
    ModeKet,
    SupportLeakageError,
    TwoModeKet,
    cat_kets,
    ket_overlap,
    mixture_to_dyads,
    normal_moment,
    operators_equal,
    overlap,
    partial_trace,
    product_ket,
    purity,
    spectrum,
    trace,
    validate_state,
    von_neumann_entropy,
)
from .catalog import (
    StateId,
    apply_cat_subspace_unitaries,
    apply_local_sx,
    build,
    channel_phi,
    dyads_from_qubit_matrix,
    fock_limit_qubit_matrix,
)
from .gaussian import (
    CovarianceMatrix,
    SymplecticPair,
    bosonic_entropy,
    covariance,
    non_gaussianity,
    symplectic_eigenvalues,
)
from .minneg import (
    LocalUnitaryParams,
    MinNegativityResult,
    OptimizerSpec,
    min_negativity,
)
from .phasespace import (
    NegativityResult,
    QuadratureSpec,
    box_normalization,
    default_quadrature,
    husimi,
    husimi_grid_min,
    negativity_volume,
    wigner,
    wigner_dyad_kernel,
    wigner_grid_min,
)
from .photon import (
    SU2ModeParams,
    VanishingPhotonNumberError,
    mandel_q_mode,
    mandel_q_su2,
    squeezing_d,
)
from .qubit import (
    BlochDecomposition,
    QubitDensityMatrix,
    bloch_decomposition,
    classical_correlation,
    correlation_rank,
    geometric_discord,
    lqu,
    mutual_information,
    quantum_discord,
    qubit_matrix,
    t_det,
)

__version__ = "0.1.0"
