"""Exception types shared by the library and mapped to CLI exit codes."""


class InputError(ValueError):
    """Malformed or inconsistent input (exit code 2)."""


class ResourceLimitError(RuntimeError):
    """A configured size cap was exceeded (exit code 3)."""


class CertificateFailure(RuntimeError):
    """A construction step produced an object violating its required properties."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
