"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input (bad graph, list, certificate, parameter)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class GenerationError(RuntimeError):
    """A random generator gave up after its retry budget."""


class SequencingError(RuntimeError):
    """A staged elimination was requested before all factors of a variable were absorbed."""
