# ringlab/errors.py
"""
Exception types; all derive from ValueError so callers can treat them as bad input
"""
from typing import List, Tuple, Sequence


class RingLabError(ValueError):
    """Base error for everything raised on purpose by ringlab"""


class SpecParseError(RingLabError):
    """Ring-spec DSL or text form could not be parsed"""


class BudgetExceededError(RingLabError):
    """A construction would exceed a configured size budget"""


class RingConstructionError(RingLabError):
    """Constructor inputs are mathematically invalid (p not prime, bad table, ...)"""


class PreconditionError(RingLabError):
    """An operation was called outside its precondition"""


class _WitnessedError(RingLabError):
    def __init__(self, message: str, failures: Sequence[Tuple[str, Tuple[int, ...]]]):
        self.failures: List[Tuple[str, Tuple[int, ...]]] = list(failures)
        detail = "; ".join(f"{name} at {witness}" for name, witness in self.failures[:5])
        super().__init__(f"{message}: {detail}" if detail else message)


class ActionValidationError(_WitnessedError):
    """Finite action tables violate a two-sided Z-ring condition"""


class SemidirectDataError(_WitnessedError):
    """SemidirectData violates the unitality or consistency conditions"""
