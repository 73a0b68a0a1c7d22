"""Exception hierarchy shared by every module."""


class GinvError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(GinvError):
    pass


class BackendMismatch(GinvError):
    pass


class Singular(GinvError):
    """Matrix is not invertible (rank < n)."""


class SingularAC(Singular):
    """I - ac is singular, so the Jacobson-type inverse does not exist."""


class DimensionTooLarge(GinvError):
    pass


class NoConvergence(GinvError):
    pass


class NoGroupInverse(GinvError):
    """Index >= 2; the group inverse does not exist."""


class HypothesisViolated(GinvError):
    """A quadruple does not satisfy the conditions its family requires."""


class TransferMismatch(GinvError):
    """A transferred inverse disagrees with the directly computed one."""


class GenerationFailed(GinvError):
    pass


class ZeroLambda(GinvError):
    pass


class ParseError(GinvError):
    """Malformed or inconsistent JSON input."""
