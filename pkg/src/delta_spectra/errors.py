"""Exception types raised across the package."""


class DeltaSpectraError(Exception):
    """Base class for every error raised by delta_spectra."""


class PoleError(DeltaSpectraError, ValueError):
    """Argument sits on a pole of the function being evaluated."""


class DomainError(DeltaSpectraError, ValueError):
    """Argument lies outside the domain where a formula is valid."""


class BudgetExceededError(DeltaSpectraError, ArithmeticError):
    """A series did not stabilise within its term budget."""


class NoConvergenceError(DeltaSpectraError, RuntimeError):
    """An iterative solver or a grid refinement failed to converge."""


class BranchJumpError(DeltaSpectraError, RuntimeError):
    """A labelled eigenvalue branch changed identity between coupling steps."""


class InsufficientStatesError(DeltaSpectraError, ValueError):
    """Not enough bound states exist for the requested decomposition."""
