"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad vertex id, unparsable file, unknown name)."""


class DomainError(ValueError):
    """Input is well formed but outside an operation's domain (e.g. disconnected pair)."""


class TheoremContradiction(RuntimeError):
    """A proven inequality or counting identity failed on a concrete instance.

    This always indicates an implementation bug, never a property of the input.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
