"""Exception hierarchy shared by all modules.

Every error carries an ``exit_code`` used by the command line to pick its status.
"""


class PolyGBError(Exception):
    """Base class for library errors."""

    exit_code = 2


class InputError(PolyGBError, ValueError):
    """Malformed or invalid input (exit code 2)."""


class Empty(InputError):
    pass


class NotConnected(InputError):
    pass


class UnknownPattern(InputError):
    pass


class VertexNotInP(InputError):
    pass


class BadIndex(InputError):
    pass


class NotThin(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class OrderPreconditionViolated(InputError):
    pass


class BadGridSpec(InputError):
    pass


class NotAGrid(InputError):
    pass


class DeletionNotInP1(InputError):
    pass


class DoesNotClose(InputError):
    pass


class SelfOverlap(InputError):
    pass


class NotThinCycle(InputError):
    pass


class RankCapExceeded(InputError):
    pass


class ParseError(InputError):
    pass


class Timeout(PolyGBError):
    """Pair budget exhausted; the instance is too large, the result is not wrong."""

    exit_code = 3

    def __init__(self, budget):
        super().__init__(f"pair budget of {budget} exhausted")
        self.budget = budget
