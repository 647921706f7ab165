"""Exception hierarchy shared across the package.

Every error class carries the process exit code the CLI maps it to:
2 violated precondition, 3 degenerate input, 4 search exhausted,
5 internal inconsistency (a bug or invalid data slipping past the guards).
"""


class TriplesymError(Exception):
    exit_code = 2


class PreconditionFailed(TriplesymError):
    exit_code = 2


class BadModulus(PreconditionFailed):
    pass


class NotPrime(PreconditionFailed):
    pass


class NoPrimaryAssociate(PreconditionFailed):
    pass


class ExcludedPrime(PreconditionFailed):
    pass


class BadConstant(PreconditionFailed):
    pass


class NotInF2(PreconditionFailed):
    pass


class IndexOutOfRange(PreconditionFailed):
    pass


class NotCoprime(TriplesymError):
    exit_code = 3


class DivisibleByModulus(NotCoprime):
    pass


class DegeneratePrime(TriplesymError):
    exit_code = 3


class NotScalar(TriplesymError):
    exit_code = 3


class SearchExhausted(TriplesymError):
    exit_code = 4

    def __init__(self, bound, message=None):
        self.bound = bound
        super().__init__(message or f"no solution within bound {bound}")


class Inconsistent(TriplesymError):
    exit_code = 5


class InconsistentShape(Inconsistent):
    pass


class NoCubeRoot(Inconsistent):
    pass
