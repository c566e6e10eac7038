"""Exception types shared across the package."""


class TwistError(Exception):
    """Base class for every error raised by twistsha."""


class HypothesisViolation(TwistError, ValueError):
    """Input does not satisfy the hypotheses of the requested computation."""


class BadShape(HypothesisViolation):
    """(a, b) does not give a primitive solution of a^2 + b^2 = 2c^2."""


class NotSelmerMinimal(HypothesisViolation):
    """The base curve has a nontrivial pure 2-Selmer group."""


class NotFound(TwistError):
    """A bounded search (norm equation) found no solution."""


class Inconclusive(TwistError):
    """The p-adic point search could not certify either answer at this depth."""


class TorsionAnomaly(TwistError):
    """A rational point of order 3 or 4 was found on a twist (should never happen)."""


class RankAnomaly(TwistError):
    """rank A fell outside {k-2, k-1} although the Selmer group has dimension 2."""


class EquivalenceViolation(TwistError):
    """The descent route and the class-group route disagreed."""


class BudgetExceeded(TwistError, ValueError):
    """A sieve bound exceeds the configured memory budget."""
