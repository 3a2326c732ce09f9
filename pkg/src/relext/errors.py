"""Exception hierarchy.  ``exit_code`` is what the command line reports."""


class RelextError(Exception):
    exit_code = 3


class InputError(RelextError, ValueError):
    """Malformed or inconsistent input (exit code 1)."""

    exit_code = 1


class PreconditionError(RelextError):
    """A mathematical precondition does not hold (exit code 2)."""

    exit_code = 2


class InternalError(RelextError):
    """An internal invariant failed; always a bug (exit code 3)."""

    exit_code = 3


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class DuplicateName(ParseError):
    pass


class UnknownVertex(ParseError):
    pass


class UnknownArrow(ParseError):
    pass


class CompositionMismatch(ParseError):
    pass


class ZeroRelation(ParseError):
    pass


class NonAdmissibleIdeal(InputError):
    pass


class ActionMismatch(InputError):
    pass


class NotAModuleMap(InputError):
    pass


class ZeroModule(InputError):
    pass


class InfiniteDimensional(PreconditionError):
    pass


class CyclicQuiver(PreconditionError):
    pass


class GlobalDimensionTooHigh(PreconditionError):
    pass


class RepresentativeChoiceFailed(InternalError):
    pass
