"""Spin tomography of qubits and tomographic quantumness witnesses."""

from .errors import (
    ClassicalStateError,
    InvalidStateError,
    NoWitnessError,
    ParameterDomainError,
    PlanError,
    PreconditionError,
    ReconstructionError,
    SpinTomoError,
)
from .experiment import (
    EstimatedReport,
    MeasurementPlan,
    PlannedDirection,
    SampledTomogram,
    estimated_test,
    simulate_measurements,
    two_stage_test,
)
from .linalg2 import CMat2, EigenDecomp2, EulerUnitary, Hermitian2, eig_hermitian
from .testkit import (
    ClassicalObservable,
    ClassicalState,
    TestReport,
    classical_implication_check,
    classical_stochastic_form,
    quantum_stochastic_form,
    run_quantumness_test,
)
from .tomography import (
    DensityMatrix,
    Observable,
    PhasePoint,
    QuadratureRule,
    TomogramPoint,
    average_closed_form,
    average_dual,
    average_outcomes,
    average_trace,
    dual_symbol,
    reconstruct,
    symbol,
    tomogram,
    tomogram_function,
)
from .witness import (
    WitnessPair,
    WitnessParams,
    diagonal_state,
    embed_qudit_witness,
    extract_r,
    first_moment_gap,
    witness_expectation,
    witness_family,
    witness_for_state,
)

__version__ = "0.1.0"
