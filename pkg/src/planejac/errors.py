"""Exception hierarchy shared by the library and the command line."""


class AlgebraError(ValueError):
    """Field or universe mismatch, malformed algebraic input."""


class ParseError(AlgebraError):
    """Text input that does not follow the polynomial/curve/divisor grammar."""


class ValidationError(ValueError):
    """A curve, divisor or group element violates its preconditions."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug."""
