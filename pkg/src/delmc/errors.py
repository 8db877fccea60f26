"""Shared refusal exceptions.

A refusal means the requested computation has no exact answer within the
configured limits (enumeration budget, truncation window, or a missing
normal-form rule).  Refusals are distinct from invariant failures: the CLI
maps refusals to exit code 3 and invariant failures to exit code 1.
"""


class Refusal(RuntimeError):
    pass


class BudgetRefusal(Refusal):
    pass


class TruncationRefusal(Refusal):
    pass


class EnumerationRefusal(Refusal):
    """Raised when a set is infinite (or not listable); carries the
    defining equations when they are known."""

    def __init__(self, message, equations=None):
        super().__init__(message)
        self.equations = list(equations or [])
