"""Shared exception types."""


class ConfigurationError(ValueError):
    """Unsupported Cartan type, rank out of bounds, or missing context."""


class BudgetError(RuntimeError):
    """A requested computation exceeds its configured size budget."""


class RepresentationError(RuntimeError):
    """A matrix representation failed a structural check."""


class GeneratorConstructionError(RuntimeError):
    """Invariant generators came out algebraically dependent or unfixable."""
