"""Exception hierarchy shared across the package."""


class NiceCorrError(Exception):
    """Base class for all package errors."""


class InputError(NiceCorrError, ValueError):
    """Malformed or out-of-contract user input (bad CSV, bad spec, bad flag)."""


class NumericError(NiceCorrError, ArithmeticError):
    """Numerical failure inside a solver or decomposition."""
