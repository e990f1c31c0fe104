"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands live on one-particle spaces of different dimension."""


class SymplecticityError(RuntimeError):
    """A computed flow drifted too far from the symplectic group."""


class LeakageError(RuntimeError):
    """Truncated Fock evolution pushed too much norm into the top sectors."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ScenarioError(ValueError):
    """A scenario file or dict could not be parsed into a runnable setup."""
