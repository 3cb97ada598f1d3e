"""Exception and warning types shared across the package.

The CLI maps these onto process exit codes: usage/parse problems exit 2,
domain errors (points or states outside an operation's domain) exit 3,
and iterative non-convergence exits 4.
"""


class FockBundleError(Exception):
    """Base class for all library-specific errors."""


class DomainError(FockBundleError):
    """A point or state lies outside the mathematical domain of an operation."""


class NearOriginError(DomainError):
    """Point too close to the excised origin of C^2 for chart operations."""


class ChartPoleError(DomainError):
    """Chart transition requested at the pole of the target chart."""


class ZeroSectionError(DomainError):
    """Operation undefined on an identically zero (or zero-amplitude) state."""


class MixedGradeError(DomainError):
    """A single-grade state was required but several grades are occupied."""


class TruncationOverflowError(DomainError):
    """A raising operation would push amplitude beyond the truncation grade."""


class InvalidGridError(DomainError):
    """A sample grid violates its ordering or size contract."""


class NonConvergenceError(FockBundleError):
    """An iterative solver exhausted its iteration budget."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class TruncationTailWarning(UserWarning):
    """Squared-norm mass near the truncation grade exceeds the safe margin.

    Carries ``tail_mass``, the squared norm found within the guard band
    below (and dropped beyond) the truncation grade.
    """

    def __init__(self, message, tail_mass):
        super().__init__(message)
        self.tail_mass = tail_mass
