"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class DegenerateInputError(DomainError):
    """A normalizing amplitude is numerically zero."""


class ResourceError(RuntimeError):
    """An exact enumeration would exceed the configured cap."""
