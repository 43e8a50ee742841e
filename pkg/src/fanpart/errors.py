"""Exception types shared across the package."""


class InvalidPartitionError(ValueError):
    """A vertex collection is not a partition, or a partition fails the
    structural property being checked (e.g. an edge skips path parts)."""


class InvalidDecompositionError(ValueError):
    """A tree- or star-decomposition is malformed or fails condition (a)/(b)."""


class InvalidCertificateError(ValueError):
    """A product-embedding certificate is inconsistent."""


class TooLargeError(ValueError):
    """An exhaustive routine was called above its size guard."""


class BoundExceededError(RuntimeError):
    """A measured quantity exceeded a promised bound.

    Carries which bound was violated, the measured value and the bound so
    callers can build a provenance chain.
    """

    def __init__(self, which, measured, bound, context=""):
        self.which = which
        self.measured = measured
        self.bound = bound
        self.context = context
        msg = f"{which}: measured {measured} exceeds bound {bound}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)
