"""Error types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation or its hypotheses."""


class PrecisionError(ArithmeticError):
    """Certified error bounds are too wide to decide the requested question."""


class ConfigError(ValueError):
    """A configured cap or size limit was exceeded."""


class NotAvailableError(LookupError):
    """No closed form is known for the requested quantity."""
