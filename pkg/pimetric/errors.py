"""
Error Types

Every failure raised by the algebra package is a PiMetricError, which is a
ValueError so callers that already guard on ValueError keep working.
"""


class PiMetricError(ValueError):
    """Base class for all pimetric errors."""


# ============================================================
# FIELD ERRORS
# ============================================================

class NotPrimePower(PiMetricError):
    """The requested field order is not a prime power."""


class DivisionByZero(PiMetricError, ZeroDivisionError):
    """Inverse of the zero element was requested."""


class FieldMismatch(PiMetricError):
    """Operands belong to different fields."""


# ============================================================
# SPACE ERRORS
# ============================================================

class InvalidPartition(PiMetricError):
    """Partition is empty or has a non-positive block size."""


class PartitionNotSorted(InvalidPartition):
    """Partition block sizes are not in non-increasing order."""


class SpaceMismatch(PiMetricError):
    """Operands live in different spaces (field or partition differ)."""


class SpaceTooLarge(PiMetricError):
    """An exhaustive operation was requested beyond its feasibility cap."""


class ZeroCode(PiMetricError):
    """The generator matrix spans only the zero vector."""


# ============================================================
# SYMMETRY ERRORS
# ============================================================

class NotASymmetry(PiMetricError):
    """The map does not preserve the pi-distance."""


class NotBijective(NotASymmetry):
    """The map table is not a permutation of the vector indices."""


class SeparabilityViolation(NotASymmetry):
    """A block image depends on coordinates outside its own block."""


class NotAdmissible(PiMetricError):
    """The block permutation moves a block onto one of a different size."""


class NotAnAutomorphism(PiMetricError):
    """The map is not a linear symmetry."""


class SingularMatrix(PiMetricError):
    """A block matrix has zero determinant."""


# ============================================================
# I/O ERRORS
# ============================================================

class ParseError(PiMetricError):
    """A text document could not be parsed."""


class OrderTooLarge(PiMetricError):
    """An exact group order would exceed the big-integer budget."""
