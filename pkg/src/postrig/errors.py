"""Exception types shared across the package."""


class PostrigError(Exception):
    """Base class for library errors."""


class ParameterDomainError(PostrigError, ValueError):
    """A parameter violates its stated domain; the message names the inequality."""


class SizeError(PostrigError, ValueError):
    """Input sequence has the wrong length."""


class PoleError(PostrigError, ArithmeticError):
    """Evaluation requested at a pole."""


class BracketError(PostrigError, ValueError):
    """Root finder was given an interval without a sign change."""


class ConvergenceError(PostrigError, RuntimeError):
    """An iterative scheme failed to reach its tolerance."""


class RootOutOfRangeError(PostrigError, ValueError):
    """The defining equation has no root in the admissible interval."""
