"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input violates a documented physical or numerical precondition."""


class ChainError(DomainError):
    """Stages in a conversion chain do not connect (wavelength mismatch)."""


class NoCrossingError(DomainError):
    """The raw fiber never loses to the converted one, so no crossover distance exists."""


class NumericError(RuntimeError):
    """A linear solve or other numerical step failed on malformed input."""
