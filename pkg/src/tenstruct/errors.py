"""Exception types shared by the tensor modules."""


class InputError(ValueError):
    """Malformed or out-of-contract input: bad shapes, indices, or JSON."""


class DegenerateGeneratorError(InputError):
    """A generating vector would produce an undefined (divide-by-zero) entry."""


class UnsupportedQueryError(Exception):
    """The requested property is not defined for this input, e.g. a
    positive semi-definiteness query on an odd-order tensor."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its budget.  ``bracket`` carries the
    best enclosing bounds reached, when the solver maintains any."""

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class NoRealMinimalDecomposition(RuntimeError):
    """Minimal-mode node recovery failed: the recurrence has complex or
    repeated characteristic roots, or no consistent recurrence exists in
    the search window.  Fixed-nodes mode remains available."""
