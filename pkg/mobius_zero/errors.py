"""
Exception types raised by the Möbius function toolkit.
"""


class MobiusError(Exception):
    """
    Base class for every error raised by this package.
    """


class MalformedPermutationError(MobiusError, ValueError):
    """
    Raised when text or a sequence does not describe a permutation.

    Args:
        message (str): Human-readable description
        token: The offending token or value
    """
    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token


class DomainError(MobiusError, ValueError):
    """
    Raised when an operation is called outside its precondition.
    """


class CacheCorruptError(MobiusError, ValueError):
    """
    Raised when a persisted Möbius cache cannot be trusted.

    Args:
        message (str): Human-readable description
        path (str): Path of the cache file
        line_number (int, optional): 1-based line where the problem was found
    """
    def __init__(self, message, path, line_number=None):
        super().__init__(message)
        self.path = path
        self.line_number = line_number


class CostGateError(MobiusError, RuntimeError):
    """
    Raised when a census is too large to run without explicit opt-in.

    Args:
        message (str): Human-readable description
        estimate (str): Cost estimate shown to the user
    """
    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate
