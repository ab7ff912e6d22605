class OrdsysError(Exception):
    pass


class ResourceLimitError(OrdsysError):
    """A configured size or depth limit was exceeded."""


class DomainError(OrdsysError):
    """A function was applied outside its domain."""


class PreconditionError(OrdsysError, ValueError):
    pass


class ContractError(OrdsysError):
    """An input structure violates an axiom the operation depends on.

    ``witness`` carries the failing check when there is one.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(OrdsysError):
    """Two computations that must agree did not; signals a bug."""


class ParseError(OrdsysError, ValueError):
    pass
