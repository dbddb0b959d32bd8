"""Exception hierarchy shared by every module in the package."""


class DescentMetricsError(Exception):
    """Base class for all errors raised by descent_metrics."""


class InvalidPermutation(DescentMetricsError, ValueError):
    """Entries do not form a rearrangement of 1..n."""


class InvalidDescentSet(DescentMetricsError, ValueError):
    """Descent indices fall outside [n-1] or n is not positive."""


class IncomparablePermutations(DescentMetricsError, ValueError):
    """Two permutations of different lengths were passed to a metric."""


class DomainError(DescentMetricsError, ValueError):
    """Parameters fall outside the range where a closed form is proved."""


class OracleBoundExceeded(DescentMetricsError, ValueError):
    """The naive filter oracle was asked for n above its bound."""


class ClassTooLarge(DescentMetricsError, ValueError):
    """A class would exceed the materialization cap."""


class DegenerateClass(DescentMetricsError, ValueError):
    """The class has fewer than two members, so no distinct pairs exist."""


class BudgetExceeded(DescentMetricsError):
    """A pairwise scan would exceed the configured comparison budget."""


class OpenProblem(DescentMetricsError):
    """No closed form is known for the requested l-infinity class."""


class InvariantViolation(DescentMetricsError, AssertionError):
    """A construction broke one of its own guarantees. Always a bug."""
