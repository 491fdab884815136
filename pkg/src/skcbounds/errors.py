"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so library code should raise
the most specific one that applies.
"""


class UnphysicalStateError(ValueError):
    """Covariance matrix violates the uncertainty principle (some nu < 1)."""


class UnsupportedChannelError(ValueError):
    """Channel exists but the requested quantity is undefined for it."""


class InfeasibleSpectrumError(ValueError):
    """No resource state with the requested symplectic spectrum exists."""


class NumericGuardError(ArithmeticError):
    """A computation was refused because it would be numerically meaningless."""
