"""Exception types shared across the package."""


class InvalidTuple(ValueError):
    """Raised when a coefficient tuple is malformed or fails a validity precondition."""


class BudgetExhausted(RuntimeError):
    """Raised when a search hits its node budget before resolving.

    Hitting the budget is never silently treated as "no solution"; callers
    decide whether to retry with a larger cap.  ``partial`` may carry partial
    results (the greedy engine attaches the terms accepted so far).
    """

    def __init__(self, nodes: int, partial=None):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes
        self.partial = partial


class Overflow(OverflowError):
    """Raised when a computed value would not fit in 63 bits."""


class DomainError(ValueError):
    """Raised when an analytic formula is evaluated outside its domain."""


class UnsupportedM(ValueError):
    """Raised when family parameters are requested for an unsupported size."""
