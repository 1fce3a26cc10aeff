"""Exception hierarchy shared by all modules."""


class ProjConstError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(ProjConstError, ValueError):
    """Bad argument: wrong shape, index out of range, mismatched orders."""


class DomainError(ProjConstError, ValueError):
    """Input outside the domain where an operation is defined."""


class SpectralGapError(ProjConstError, ArithmeticError):
    """lambda_n and lambda_{n+1} are too close for a derivative to exist."""

    def __init__(self, gap, tol):
        super().__init__(f"spectral gap {gap:.3e} below tolerance {tol:.1e}")
        self.gap = gap
        self.tol = tol


class ConvergenceError(ProjConstError, RuntimeError):
    """An iterative method hit its iteration cap."""


class ResourceBudgetError(ProjConstError, RuntimeError):
    """Problem size exceeds the brute-force budget of an operation."""


class PreconditionError(ProjConstError, ValueError):
    """Mathematical precondition violated (e.g. cubic with complex roots)."""


class MatrixParseError(ProjConstError, ValueError):
    """Malformed matrix file."""

    def __init__(self, message, line=None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
