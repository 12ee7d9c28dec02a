"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a formula is defined."""


class SingularityError(ZeroDivisionError):
    """A denominator vanished (singular locus of a chart or reduced equation).

    ``location`` holds the offending point when it is known.
    """

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class BracketError(RuntimeError):
    """Shooting bracket endpoints do not show opposite behaviour."""
