"""Exception hierarchy shared by every module."""


class KernelError(Exception):
    pass


class ParseError(KernelError):
    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        detail = f"line {line}, column {column}: {message}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class TypeCheckError(KernelError):
    """A failed typing judgment.

    ``term`` is the offending subterm; ``expected``/``actual`` are formulas
    when the failure is a mismatch.
    """

    def __init__(self, message, term=None, expected=None, actual=None):
        self.term = term
        self.expected = expected
        self.actual = actual
        super().__init__(message)


class UnboundVariable(TypeCheckError):
    pass


class ShapeMismatch(TypeCheckError):
    pass


class BranchMismatch(TypeCheckError):
    pass


class CannotInfer(TypeCheckError):
    pass


class EigenvariableEscape(TypeCheckError):
    pass


class FormulaNotAtomic(KernelError):
    pass


class NotNeutral(KernelError):
    pass


class UnboundInEnv(KernelError):
    pass


class CBVOpenTerm(KernelError):
    pass


class FuelExhausted(KernelError):
    pass


class GenerationFailed(KernelError):
    pass
