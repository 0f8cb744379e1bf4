"""Exceptions raised by the discrete differential operator package."""


class DDPError(Exception):
    """Base class for every error raised by ddp."""


class DomainError(DDPError, ValueError):
    """An operation was called outside its documented preconditions."""


class SingularMatrixError(DDPError, ArithmeticError):
    """A Vandermonde or 2D design matrix cannot be inverted.

    Attributes:
        pair: (index_a, index_b, value) of two colliding offsets, if known
        spectrum: singular values of a rank-deficient design matrix, if known
    """

    def __init__(self, message, pair=None, spectrum=None):
        super().__init__(message)
        self.pair = pair
        self.spectrum = spectrum
