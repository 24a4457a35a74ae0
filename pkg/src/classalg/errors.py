"""Exception hierarchy shared by all classalg modules."""


class AlgebraError(Exception):
    """Base class for every error raised by classalg."""


class TermError(AlgebraError):
    """A term failed validation; ``path`` locates the offending node.

    The path is a tuple of argument positions from the root, so ``()`` is the
    root itself and ``(1, 0)`` is the first argument of the second argument.
    """

    def __init__(self, message, path=()):
        self.path = tuple(path)
        where = "/".join(str(i) for i in self.path) or "<root>"
        super().__init__(f"{message} at {where}")


class UnknownOp(TermError):
    def __init__(self, op, path=()):
        self.op = op
        super().__init__(f"unknown operation {op!r}", path)


class ArityMismatch(TermError):
    def __init__(self, op, expected, got, path=()):
        self.op, self.expected, self.got = op, expected, got
        super().__init__(f"{op!r} takes {expected} argument(s), got {got}", path)


class SortMismatch(TermError):
    def __init__(self, expected, got, path=()):
        self.expected, self.got = expected, got
        super().__init__(f"expected sort {expected!r}, got {got!r}", path)


class UnknownVar(TermError):
    def __init__(self, index, path=()):
        self.index = index
        super().__init__(f"variable {index} not in context", path)


class MissingAssignment(AlgebraError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"no value assigned to variable {index}")


class SignatureError(AlgebraError):
    """Malformed signature (unknown sort, duplicate symbol, ...)."""


class SignatureMismatch(AlgebraError):
    pass


class UnknownTheory(AlgebraError):
    pass


class UnsupportedTheory(AlgebraError):
    pass


class NotAHomomorphism(AlgebraError):
    def __init__(self, op, witness, detail=""):
        self.op, self.witness = op, witness
        msg = f"not a homomorphism: {op} fails at {witness!r}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class NotACongruence(AlgebraError):
    def __init__(self, reason, witness=None):
        self.reason, self.witness = reason, witness
        super().__init__(f"not a congruence: {reason} {witness!r}")


class NotClosed(AlgebraError):
    def __init__(self, op, witness):
        self.op, self.witness = op, witness
        super().__init__(f"subset not closed under {op}: {witness!r}")


class NotProper(AlgebraError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"predicate does not respect setoid equality: {witness!r}")


class SourceTargetMismatch(AlgebraError):
    pass


class UnknownImplementation(AlgebraError):
    pass


class ResolutionError(AlgebraError):
    pass


class NoSolution(ResolutionError):
    pass


class LimitExceeded(ResolutionError):
    pass


class IllScopedRule(ResolutionError):
    pass


class InvalidKey(AlgebraError):
    pass


class NotFound(AlgebraError):
    pass


class SurfaceSyntaxError(AlgebraError):
    """Parse failure in the infix surface syntax."""

    def __init__(self, message, line, column, expected=()):
        self.line, self.column = line, column
        self.expected = tuple(sorted(expected))
        exp = f"; expected one of {', '.join(self.expected)}" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{exp}")
