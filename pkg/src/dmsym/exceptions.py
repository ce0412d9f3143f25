"""Exception types raised by the library."""


class NegativeEigenvalue(ValueError):
    """A kernel has a clearly negative Choi eigenvalue, so no Kraus form exists."""


class SingularKernel(ValueError):
    pass


class ContractViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class LinearityViolation(ValueError):
    """Per-direction noise data is not linear in the direction."""


class NonUnitaryFamily(ValueError):
    pass


class NegativeDelta(ValueError):
    """A noise eigenvalue is negative along the requested time direction."""


class StepTooLarge(ArithmeticError):
    pass


class EnsembleMismatch(ValueError):
    """Two ensembles do not describe the same density matrix."""


class NotFactorized(ValueError):
    pass
