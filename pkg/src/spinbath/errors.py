"""Exception types shared across the package.

The distinction matters for the command line front end, which maps
DomainError to the config exit code and ConsistencyError to the
numerical-consistency exit code.
"""


class DomainError(ValueError):
    """An input lies outside the documented domain of an operation."""


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; results would not be trustworthy."""
