"""Exception types shared across the package."""


class MultikitError(ValueError):
    """Base class for invalid input to a multikit operation."""


class AlignmentError(MultikitError):
    """Operands do not share a grid (or universe) and cannot be combined."""


class ExprSyntaxError(MultikitError):
    """Raised by :func:`multikit.expr.parse` on malformed input.

    ``offset`` is the byte offset of the offending token and ``expected`` the
    set of token kinds that would have been accepted there.
    """

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        full = f"{message} at offset {offset}"
        if exp:
            full += f" (expected one of: {exp})"
        super().__init__(full)
