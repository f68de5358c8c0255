"""qinv: local-unitary and SLOCC invariants of n-qubit pure states."""

from .errors import (
    BadSubsetError,
    ConditioningFailureError,
    DimensionMismatchError,
    EvenQubitCountError,
    HermitianViolationError,
    IndexOutOfRangeError,
    InternalDisagreementError,
    InvariantNotApplicableError,
    LengthMismatchError,
    NotUnitaryError,
    OddQubitCountError,
    QinvError,
    SameIndexError,
    TooLargeError,
    UnnormalizedError,
    WrongQubitCountError,
    ZeroVectorError,
)
from .invariants import (
    InvariantReport,
    ReportEntry,
    concurrence,
    cubic_invariant,
    first_kind_fingerprint,
    invariant_count,
    invariant_report,
    odd_tangle,
    pair_identity_residual,
    pair_invariant,
    pair_tangle,
    single_qubit_invariant,
    single_qubit_invariant_dm,
    three_qubit_suite,
    three_tangle,
    triple_correlation_sum,
)
from .orbit import (
    LocalOperator,
    VerificationReport,
    apply_local,
    applicable_invariants,
    random_lu,
    random_sl,
    random_state,
    verify_invariance,
)
from .pauli import (
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    SPIN_FLIP,
    PauliString,
    adjoint_rotation,
    apply_single_qubit,
    apply_string,
    bilinear,
    expectation,
)
from .state import (
    DensityMatrix,
    PureState,
    conjugate,
    cross_term,
    new_state,
    partial_trace,
    purity,
    trace_power,
)

__version__ = "0.1.0"
