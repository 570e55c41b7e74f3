"""Exception hierarchy shared by all modules."""


class BlankCalcError(Exception):
    """Base class for every error raised by this package."""


class MalformedInput(BlankCalcError, ValueError):
    pass


class NotDoubleOccurrence(BlankCalcError, ValueError):
    pass


class NotSpherical(BlankCalcError, ValueError):
    """The Gauss code only embeds in a surface of positive genus."""


class InconsistentNumbering(BlankCalcError):
    pass


class ChordNotApplicable(BlankCalcError, ValueError):
    pass


class SearchBudgetExceeded(BlankCalcError):
    """The memoized cancellation search visited more states than allowed."""


class InternalInconsistency(BlankCalcError, AssertionError):
    pass


class GenerationExhausted(BlankCalcError):
    pass


class OracleBudgetExceeded(BlankCalcError):
    pass


class CensusViolation(BlankCalcError, AssertionError):
    """A campaign check failed; ``document`` replays the offending curve."""

    def __init__(self, message, document=None):
        super().__init__(message)
        self.document = document
