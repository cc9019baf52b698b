"""Exception types raised by symwerner."""


class NotHermitianError(ValueError):
    """Operator fails the Hermiticity check."""


class NotSymmetricError(ValueError):
    """Decomposition is not invariant under qubit permutations."""


class CapacityError(ValueError):
    """Requested size exceeds the supported qubit count."""


class NormalizationError(ValueError):
    """Radial coefficients do not describe a trace-one operator."""


class NumericalDegeneracyError(ArithmeticError):
    """Eigenvalue clusters could not be resolved at the requested tolerance."""


class WernerDisagreementError(RuntimeError):
    """The radial test and the sampled invariance test gave different answers."""
