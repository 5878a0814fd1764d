"""Exception types raised by fairgame."""


class FairGameError(Exception):
    """Base class for all library errors."""


class ProfileError(FairGameError, ValueError):
    """A profile does not fit the economy (wrong length or action index)."""


class SchemeError(FairGameError, ValueError):
    """A pay scheme cannot be applied to the economy it was given."""


class SizeCapError(FairGameError):
    """Building the full game would exceed the configured term budget."""

    def __init__(self, terms, cap):
        self.terms = terms
        self.cap = cap
        super().__init__(
            f"full game needs {terms:,} marginal-contribution terms, cap is {cap:,}"
        )


class NoConvergence(FairGameError, RuntimeError):
    """Best-response dynamics hit its iteration cap.

    In a game generated by a fair or egalitarian scheme this cannot happen, so
    it doubles as evidence that the payoffs admit an improvement cycle.
    """

    def __init__(self, message, trajectory=()):
        super().__init__(message)
        self.trajectory = list(trajectory)


class LoadError(FairGameError, ValueError):
    """An economy document could not be parsed or validated."""
