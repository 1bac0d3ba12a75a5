"""Exception hierarchy shared by every solver."""


class ZSFError(Exception):
    pass


class PreconditionError(ZSFError):
    """An input violates a solver's stated precondition (CLI exit code 3)."""


class FailureError(ZSFError):
    """A randomized-input pipeline ran out of luck (CLI exit code 2)."""


class NonInvertible(PreconditionError):
    pass


class NotPrime(PreconditionError):
    pass


class NoDependency(PreconditionError):
    pass


class ZeroVector(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class TooFewVectors(PreconditionError):
    def __init__(self, needed: int, got: int, what: str = "vectors"):
        self.needed = needed
        self.got = got
        super().__init__(f"need {needed}, got {got} ({what})")


class InsufficientInput(TooFewVectors):
    pass


class TooFewGroups(TooFewVectors):
    def __init__(self, needed: int, got: int):
        super().__init__(needed, got, "groups")


class BadK(PreconditionError):
    pass


class KTooLarge(BadK):
    pass


class TrivialInput(PreconditionError):
    pass


class NotZeroSumBounded(PreconditionError):
    pass


class BadPartition(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class NoLongAP(PreconditionError):
    pass


class NoY(PreconditionError):
    pass


class CaseDispatchFailure(PreconditionError):
    pass


class BudgetExceeded(PreconditionError):
    pass


class SampleFailure(FailureError):
    pass


class SolveFailed(FailureError):
    pass
