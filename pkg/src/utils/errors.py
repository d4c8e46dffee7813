"""
Exception hierarchy for trdiff.

Each family maps to one CLI exit status (see src.pipeline.run).
"""


class TrdiffError(Exception):
    """Base class for all solver errors."""


class ConfigurationError(TrdiffError):
    """Invalid grid, material, boundary or run configuration."""


class SolverError(TrdiffError):
    """Numerical failure during a solve."""


class PositivityError(SolverError):
    """A temperature or energy that must be positive is not."""


class ReconstructionError(SolverError):
    """The constrained least-squares system of the tangential stage is singular."""


class NonConvergenceError(SolverError):
    """An implicit step hit its inner-iteration cap (raised in strict mode only)."""
