"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented precondition."""


class PerturbativeValidityError(ValidationError):
    """Raised when a requested coupling puts the model outside its
    perturbative window, so the leading-order state would not be a
    meaningful density matrix."""


class ConvergenceError(RuntimeError):
    """Raised when a numerical routine cannot certify its result to the
    requested tolerance."""
