"""Custom exceptions for py-superali."""


class SuperAliError(Exception):
    """Base exception for all py-superali errors."""

    pass


class ValidationError(SuperAliError):
    """Raised when input validation fails."""

    pass


class SpecSyntaxError(ValidationError):
    """Raised when an algebra descriptor does not match its grammar."""

    def __init__(self, text: str, grammar: str):
        """Initialize spec syntax error.

        Args:
            text: The descriptor that failed to parse
            grammar: Human-readable grammar the descriptor must follow
        """
        super().__init__(f"Cannot parse algebra {text!r}; expected one of: {grammar}")
        self.text = text
        self.grammar = grammar


class ShapeError(ValidationError):
    """Raised when a matrix does not have the required block shape."""

    pass


class TableMismatchError(SuperAliError):
    """Raised when operands live over different generator tables."""

    pass


class ParityError(SuperAliError):
    """Raised when a parity-homogeneous value is required but not given."""

    pass


class FormatMismatchError(SuperAliError):
    """Raised when supermatrix formats are incompatible."""

    def __init__(self, left: tuple[int, int], right: tuple[int, int]):
        """Initialize format mismatch error.

        Args:
            left: Format (m, n) of the left operand
            right: Format (m, n) of the right operand
        """
        super().__init__(
            f"Format mismatch: ({left[0]}|{left[1]}) vs ({right[0]}|{right[1]})"
        )
        self.left = left
        self.right = right


class DomainMismatchError(SuperAliError):
    """Raised when differential operators live on different domains."""

    pass


class NotInvertibleError(SuperAliError):
    """Raised when an element or block has no inverse."""

    pass
