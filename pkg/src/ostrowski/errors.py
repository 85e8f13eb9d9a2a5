"""Exception types shared across the package."""


class Error(Exception):
    """Base class for all errors raised by this package."""


class ExprSyntaxError(Error):
    """Malformed expression text; carries the offending character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class DomainError(Error):
    """Evaluation left the mathematical domain (ln of a non-positive value, ...)."""


class OrderOverflowError(Error):
    """Requested derivative order exceeds the configured cap."""


class MaxSubdivisionsError(Error):
    """Adaptive integration could not reach the requested tolerance."""


class NonFiniteSampleError(Error):
    """An integrand or grid function returned NaN or infinity."""


class ParamOutOfDomainError(Error):
    """Bound parameters violate a family's hypotheses (p <= 1, q < 1, ...)."""


class EqualArgumentsError(Error):
    """Mean of two equal arguments where distinctness is required."""


class UnsupportedOrderError(Error):
    """Order outside the supported range for a generalized mean."""


class EmptyGroupError(Error):
    """A best-bound group contains no valid record."""
