"""Exception hierarchy; the CLI maps each family to an exit code."""


class RaagError(Exception):
    """Base class for all library errors."""


class InputError(RaagError, ValueError):
    """Malformed input: bad graph, unknown generator, violated precondition."""


class NotChordal(InputError):
    def __init__(self, cycle):
        self.cycle = list(cycle)
        super().__init__(f"graph is not chordal; induced cycle {self.cycle}")


class NonAbelianCentralizer(InputError):
    pass


class Unsupported(InputError):
    """A configuration outside what the library implements."""


class BudgetExceeded(RaagError):
    """A search or truncation limit was hit; not a mathematical answer."""

    def __init__(self, message, **details):
        self.details = details
        super().__init__(message)
