"""Exception hierarchy shared by every module."""


class CoveringArrayError(Exception):
    """Base class for all errors raised by covarray."""


class DimensionMismatch(CoveringArrayError, ValueError):
    pass


class SymbolOutOfRange(CoveringArrayError, ValueError):
    pass


class StrengthOutOfRange(CoveringArrayError, ValueError):
    pass


class BadSelector(CoveringArrayError, ValueError):
    pass


class NotBinary(CoveringArrayError, ValueError):
    pass


class LengthMismatch(CoveringArrayError, ValueError):
    pass


class UnknownCAN(CoveringArrayError, LookupError):
    """No exact covering array number is available for the parameters."""


class DomainMismatch(CoveringArrayError, ValueError):
    pass


class BudgetExceeded(CoveringArrayError, RuntimeError):
    """A search ran past its node budget.

    ``checkpoint`` holds the path of a resumable checkpoint when one was
    written.
    """

    def __init__(self, message, nodes=None, checkpoint=None):
        super().__init__(message)
        self.nodes = nodes
        self.checkpoint = checkpoint


class SizeTooSmall(CoveringArrayError, ValueError):
    pass


class DegreeTooSmall(CoveringArrayError, ValueError):
    pass


class UnknownName(CoveringArrayError, KeyError):
    pass


class HallViolation(CoveringArrayError):
    """Hall's condition fails; ``violator`` is a left set S with |N(S)| < |S|."""

    def __init__(self, violator, neighbourhood):
        self.violator = frozenset(violator)
        self.neighbourhood = frozenset(neighbourhood)
        super().__init__(
            f"Hall's condition fails: |S|={len(self.violator)} > "
            f"|N(S)|={len(self.neighbourhood)}"
        )


class PreconditionViolated(CoveringArrayError, ValueError):
    pass


class ParamOutOfRange(CoveringArrayError, ValueError):
    pass


class NotApplicable(CoveringArrayError, ValueError):
    """A bound rule's applicability window does not contain the parameters."""


class CertificateFails(CoveringArrayError, AssertionError):
    pass


class EmptyUniverse(CoveringArrayError, ValueError):
    pass


class InternalInconsistency(CoveringArrayError, AssertionError):
    pass


class ParseError(CoveringArrayError, ValueError):
    pass
