"""Exception hierarchy shared by every module."""


class SeshadriError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SeshadriError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class InvalidSurface(DomainError):
    """Surface parameters violate a validation rule."""


class DimensionMismatch(SeshadriError, ValueError):
    """Two divisor classes carry a different number of exceptional divisors."""


class PreconditionError(SeshadriError, ValueError):
    """A documented precondition of an operation does not hold."""


class UnsupportedComparison(SeshadriError, ValueError):
    """Comparison between two distinct irrational radicands."""


class ConditionalHypothesisError(SeshadriError):
    """A conjecture-dependent hypothesis is unmet and was not explicitly assumed."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"unmet hypothesis: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class WindowEmptyError(SeshadriError, ValueError):
    """No multiplier s places the requested number of points inside a good-form window."""

    def __init__(self, r: int, nearest: list):
        self.r = r
        self.nearest = nearest
        super().__init__(f"no admissible s for r={r}; nearest windows: {nearest}")
