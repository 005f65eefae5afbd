"""Exception types raised by the library."""


class EpgError(Exception):
    """Base class for all library errors."""


class SpecSyntaxError(EpgError, ValueError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class InvalidGroupError(EpgError, ValueError):
    """A Cayley table or spec does not describe a group."""

    def __init__(self, message, axiom=None, witness=()):
        self.axiom = axiom
        self.witness = tuple(witness)
        super().__init__(message)


class OrderLimitExceeded(EpgError):
    pass


class NotNilpotentError(EpgError):
    pass


class NotApplicable(EpgError):
    """A formula or check was asked for outside its hypotheses."""


class EmptyGraphError(EpgError):
    pass


class BoundExceeded(EpgError):
    pass


class SearchBudgetExceeded(EpgError):
    def __init__(self, lower, upper, nodes):
        self.lower = lower
        self.upper = upper
        self.nodes = nodes
        super().__init__(
            f"search budget of {nodes} nodes exhausted; {lower} <= gamma <= {upper}"
        )


class NonConvergence(EpgError):
    def __init__(self, off_norm, sweeps):
        self.off_norm = off_norm
        self.sweeps = sweeps
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )
