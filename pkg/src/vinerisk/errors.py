"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
NumericError -> 4.
"""


class VineRiskError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(VineRiskError):
    """Invalid or incomplete run configuration."""


class DataError(VineRiskError):
    """Input data violates a precondition (bad file, bad prices, too short)."""


class NumericError(VineRiskError):
    """A numeric procedure failed (optimizer, quadrature, solver, test)."""


class FitError(NumericError):
    """Parameter estimation did not converge or hit a domain boundary."""
