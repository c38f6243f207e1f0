"""Shared exception types."""

from __future__ import annotations


class DimensionMismatchError(ValueError):
    """Operands do not have compatible dimensions."""


class EigenConvergenceError(RuntimeError):
    """Eigendecomposition failed to converge.

    Carries the off-diagonal residual of the input so callers can judge
    how far the sweep got.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
        self.residual = residual


class SpectrumDomainError(ValueError):
    """An eigenvalue falls outside the domain of a scalar function."""


class PreconditionError(ValueError):
    """A documented hypothesis of an operation does not hold for the inputs."""
