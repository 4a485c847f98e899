"""Exception types shared across the package."""


class RingMismatchError(ValueError):
    """Operands live in different ring contexts."""


class ZeroPolynomialError(ValueError):
    """Leading data of the zero polynomial was requested."""


class ParseError(ValueError):
    """Malformed polynomial text or problem file."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class FactorLimitError(RuntimeError):
    """Factorization search exceeded its enumeration budget."""


class InternalConsistencyError(RuntimeError):
    """A certificate that must hold by construction failed to verify."""
