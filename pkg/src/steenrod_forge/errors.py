"""Exception types shared across the package."""


class DegreeMismatch(ValueError):
    """Raised when adding nonzero homogeneous polynomials of unequal degrees."""


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide the argument."""


class ParseError(ValueError):
    """Syntax error in a polynomial expression.

    Carries the byte offset of the failure and the set of tokens that
    would have been accepted there.
    """

    def __init__(self, message: str, offset: int, expected: frozenset):
        self.offset = offset
        self.expected = expected
        want = ", ".join(sorted(expected))
        super().__init__(f"{message} at offset {offset} (expected one of: {want})")


class NotInvariant(ValueError):
    """Raised when lifting a polynomial that is not fixed by the group."""


class RingMismatch(ValueError):
    """Raised when combining elements or ideals of different ambient rings."""


class InvalidParameters(ValueError):
    """Raised when family parameters violate their defining inequalities."""


class PreconditionViolated(ValueError):
    """Raised when an operation's documented precondition fails."""


class CapExceeded(ValueError):
    """Raised when a request exceeds a configured search or recursion cap."""
