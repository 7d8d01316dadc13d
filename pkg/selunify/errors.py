
class SelUnifyError(Exception):
    def __init__(self, value):
        self.value = value

    def __str__(self):
        return str(self.value)


class InvalidPositionError(SelUnifyError):
    pass


class PreconditionError(SelUnifyError):
    pass


class NotSimpleError(SelUnifyError):
    pass


class MixedPredicateError(SelUnifyError):
    pass


class ProblemSyntaxError(SelUnifyError):
    """Raised when a problem file cannot be tokenized or parsed.

    Parameters
    ----------
    value : str
        The error message
    line : int
        1-based line of the offending input, or None when it is unknown
    column : int
        1-based column of the offending input, or None when it is unknown
    """

    def __init__(self, value, line=None, column=None):
        super().__init__(value)
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return str(self.value)
        return f"line {self.line}, column {self.column}: {self.value}"


class ProblemInputError(ProblemSyntaxError):
    """A well-formed problem file that violates a problem invariant.

    ``kind`` is one of ``missing-atom``, ``duplicate-atom``, ``missing-pos``,
    ``ground-var-not-in-atom``, ``arity-clash``, ``bad-depth``.
    """

    def __init__(self, kind, value, line=None, column=None):
        super().__init__(value, line, column)
        self.kind = kind

    def __str__(self):
        return f"{self.kind}: {super().__str__()}"
