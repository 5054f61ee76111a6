"""Exception types shared across the package."""


class HomAvgError(Exception):
    """Base class for every error raised by homavg."""


class InvalidParameter(HomAvgError, ValueError):
    pass


class InvalidBasis(HomAvgError, ValueError):
    pass


class DomainError(HomAvgError, LookupError):
    """A table-backed operator was evaluated outside its finite domain."""

    def __init__(self, missing, message=None):
        self.missing = sorted(set(missing))
        super().__init__(message or f"degrees outside table domain: {self.missing}")


class SingularAtDegree(HomAvgError, ArithmeticError):
    def __init__(self, degree):
        self.degree = degree
        super().__init__(f"per-degree matrix is singular at degree {degree}")


class SearchTooLarge(HomAvgError):
    def __init__(self, estimate, ceiling):
        self.estimate = estimate
        self.ceiling = ceiling
        super().__init__(
            f"search space estimate {estimate} exceeds ceiling {ceiling}"
        )
