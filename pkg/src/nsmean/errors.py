"""Exception hierarchy."""


class NSMeanError(Exception):
    """Base class for every error raised by the package."""


class InvalidPair(NSMeanError, ValueError):
    """A mean argument that is not a finite positive real."""


class DegeneratePair(NSMeanError, ValueError):
    """A strict inequality was requested for a = b, where it cannot hold."""


class OutOfDomain(NSMeanError, ValueError):
    """Arguments outside the domain of a particular inequality."""


class ParamOutOfRange(NSMeanError, ValueError):
    """A parameter (blend weight, t, x) outside its admissible interval."""


class InternalInconsistency(NSMeanError, RuntimeError):
    """Two independent routes to the same quantity disagreed."""


class SignViolation(NSMeanError, AssertionError):
    """A sampled lemma function took the wrong sign.

    ``witness`` is the offending sample point.
    """

    def __init__(self, message: str, witness: float):
        super().__init__(message)
        self.witness = witness
