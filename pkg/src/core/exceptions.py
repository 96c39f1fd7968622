# src/core/exceptions.py

"""
Custom exceptions for the hypervector library.
All exceptions inherit from HDComputingError base class.
"""


# ==========================================================
# Base Exception
# ==========================================================
class HDComputingError(Exception):
    """Base exception for the hypervector library"""
    pass


# ==========================================================
# Argument Exceptions
# ==========================================================
class InvalidArgumentError(HDComputingError, ValueError):
    """An operand or parameter is outside its documented domain"""
    pass


class DimensionMismatchError(InvalidArgumentError):
    """Operands of one operation have different dimensions"""
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"Dimension mismatch: expected {expected}, got {actual}"
        )


class LevelOutOfRangeError(InvalidArgumentError):
    """Scalar level outside the encoder's [0, levels) range"""
    def __init__(self, value: int, levels: int):
        self.value = value
        self.levels = levels
        super().__init__(
            f"Level {value} out of range [0, {levels})"
        )


# ==========================================================
# Memory Exceptions
# ==========================================================
class EmptyMemoryError(HDComputingError):
    """Probe or cleanup on a memory that stores nothing"""
    pass


class PreconditionViolationError(HDComputingError):
    """Removal of a record that cannot have been stored"""
    pass


# ==========================================================
# I/O Exceptions
# ==========================================================
class FormatError(HDComputingError):
    """Binary container has bad magic, version or length"""
    pass


class OutputPathError(HDComputingError, OSError):
    """Output location cannot be written"""
    def __init__(self, path, reason: str = ""):
        self.path = str(path)
        message = f"Cannot write output path: {path}"
        if reason:
            message = f"{message} ({reason})"
        super().__init__(message)
