"""Input validation helpers for py-superali."""

from collections.abc import Sequence

from .constants import Limits
from .exceptions import ValidationError


def validate_parity(parity: int, param_name: str = "parity") -> None:
    """Validate a Z/2 value.

    Args:
        parity: Value to validate
        param_name: Name of the parameter (for error messages)

    Raises:
        ValidationError: If parity is not 0 or 1
    """
    if isinstance(parity, bool) or parity not in (0, 1):
        raise ValidationError(f"{param_name} must be 0 or 1, got {parity!r}")


def validate_parity_vector(parities: Sequence[int], length: int | None = None) -> None:
    """Validate a parity vector, optionally against an expected length.

    Raises:
        ValidationError: If an entry is not in Z/2 or the length differs
    """
    for position, parity in enumerate(parities):
        validate_parity(parity, f"parity[{position}]")
    if length is not None and len(parities) != length:
        raise ValidationError(
            f"Parity vector has length {len(parities)}, expected {length}"
        )


def validate_permutation(images: Sequence[int]) -> None:
    """Validate that images is a permutation of 1..k.

    Raises:
        ValidationError: If images is not a bijection on {1..k}
    """
    if sorted(images) != list(range(1, len(images) + 1)):
        raise ValidationError(f"Not a permutation of 1..{len(images)}: {list(images)}")


def validate_naive_order(order: int) -> None:
    """Validate the number of factors accepted by the naive r! sum.

    Raises:
        ValidationError: If order is below 1 or above the naive cap
    """
    if order < 1:
        raise ValidationError(f"Antisymmetrizer needs at least one factor, got {order}")
    if order > Limits.NAIVE_CAP:
        raise ValidationError(
            f"Naive antisymmetrizer is capped at r <= {Limits.NAIVE_CAP}, got {order}"
        )


def validate_degree(degree: int) -> None:
    """Validate a truncation degree.

    Raises:
        ValidationError: If degree is negative or above the supported maximum
    """
    if not 0 <= degree <= Limits.MAX_TRUNCATION_DEGREE:
        raise ValidationError(
            f"Truncation degree must be between 0 and "
            f"{Limits.MAX_TRUNCATION_DEGREE}, got {degree}"
        )


def validate_positive(value: int, param_name: str) -> None:
    """Validate that an integer parameter is at least 1.

    Raises:
        ValidationError: If value < 1
    """
    if value < 1:
        raise ValidationError(f"{param_name} must be positive, got {value}")
