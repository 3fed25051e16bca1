"""Nonlocal predictability of measurement outcomes on bipartite quantum states."""
__version__ = "0.1.0"

from .discrimination import (
    DiscriminationResult,
    Ensemble,
    dual_certificate_check,
    helstrom_two,
    min_error_solve,
    pretty_good_measurement,
)
from .linalg import (
    BipartiteDims,
    InputError,
    eigh,
    haar_random_unitary,
    kron,
    make_rng,
    partial_trace,
    trace_norm_hermitian,
)
from .predictability import (
    PredictabilityReport,
    delta_two_outcome,
    induced_ensemble,
    local_bound,
    nonlocal_predictability,
)
from .states import (
    AppendixStateFamily,
    BipartitePureState,
    DephasingSpec,
    Measurement,
    SchmidtForm,
    classically_correlated,
    classify_triviality,
    dephase,
    maximally_entangled,
    projective_measurement,
    schmidt_decompose,
    two_outcome_qubit_measurement,
    validate_measurement,
)
