"""Exception types raised by spintomo."""


class SpinTomoError(Exception):
    """Base class; ``code`` is the machine-readable tag used by the CLI."""

    code = "error"


class InvalidStateError(SpinTomoError, ValueError):
    code = "invalid-state"


class ReconstructionError(SpinTomoError, ArithmeticError):
    code = "reconstruction-not-converged"


class ParameterDomainError(SpinTomoError, ValueError):
    code = "parameter-domain"


class ClassicalStateError(SpinTomoError, ValueError):
    code = "classical-state"


class PreconditionError(SpinTomoError, ValueError):
    code = "precondition-violated"


class NoWitnessError(SpinTomoError, ValueError):
    code = "no-witness-constructible"


class PlanError(SpinTomoError, ValueError):
    code = "invalid-plan"
