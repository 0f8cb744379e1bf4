"""Discrete differential operator: Taylor coefficients and derivatives from samples."""

from ddp.errors import DDPError, DomainError, SingularMatrixError

__version__ = '0.1.0'

__all__ = ['DDPError', 'DomainError', 'SingularMatrixError', '__version__']
