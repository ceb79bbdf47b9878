"""Exception types shared across the package."""


class AqError(ValueError):
    """Invalid argument for an AQ_{n,k} operation."""


class HypothesisUnmet(AqError):
    """A lemma or theorem check was requested outside the statement's hypotheses."""


class InfeasibleRequest(AqError):
    """The request is well formed but too large to carry out (e.g. an enumeration ceiling)."""

    def __init__(self, message, count=None):
        super().__init__(message)
        self.count = count
