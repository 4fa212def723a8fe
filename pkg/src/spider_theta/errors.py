"""Exception types shared across the package."""

from __future__ import annotations


class SpiderError(Exception):
    """Base class for errors raised by spider_theta."""


class QDivisionByZero(SpiderError, ZeroDivisionError):
    pass


class DivergentLimit(SpiderError, ArithmeticError):
    """The q -> 1 limit has a pole."""


class DenominatorVanishes(SpiderError, ArithmeticError):
    """The denominator is indistinguishable from zero at the requested root of unity."""


class PrecisionExhausted(SpiderError, RuntimeError):
    """A numeric decision stayed indeterminate up to the precision cap."""


class IndeterminateSign(SpiderError, ArithmeticError):
    pass


class InadmissibleTriple(SpiderError, ValueError):
    def __init__(self, triple, reason: str):
        super().__init__(f"inadmissible triple {tuple(triple)}: {reason}")
        self.triple = tuple(triple)
        self.reason = reason


class MalformedWeb(SpiderError, ValueError):
    pass


class NonClosedWeb(SpiderError, ValueError):
    pass


class StuckState(SpiderError, RuntimeError):
    """Reduction found no applicable rewrite on a web that is not yet a scalar."""


class TermBudgetExceeded(SpiderError, MemoryError):
    def __init__(self, budget: int):
        super().__init__(f"term budget exceeded ({budget} terms)")
        self.budget = budget


class TranscriptionMismatch(SpiderError, AssertionError):
    """Two routes to the same closed-form quantity disagree."""
