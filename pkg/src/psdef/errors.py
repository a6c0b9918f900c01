"""Exception types shared across the package."""


class PsdefError(Exception):
    """Base class for all errors raised by this package."""


# group construction

class NotAssociative(PsdefError):
    def __init__(self, i, j, k):
        super().__init__(f"multiplication table is not associative at triple ({i}, {j}, {k})")
        self.triple = (i, j, k)


class NoIdentity(PsdefError):
    pass


class NoInverse(PsdefError):
    def __init__(self, g):
        super().__init__(f"element {g} has no inverse")
        self.element = g


class InvalidParameter(PsdefError):
    pass


class NotNormal(PsdefError):
    pass


class NotSubgroup(PsdefError):
    pass


class InvalidPresentation(PsdefError):
    pass


# polynomial / matrix arithmetic

class DomainMismatch(PsdefError):
    pass


class InverseNotAvailable(PsdefError):
    pass


# Groebner engine

class ResourceLimit(PsdefError):
    """Raised when a computation exceeds its configured limits.

    Carries diagnostics and, when meaningful, the partial result that was
    obtained before the limit was hit.
    """

    def __init__(self, reason, partial=None, diagnostics=None):
        super().__init__(f"resource limit hit: {reason}")
        self.reason = reason
        self.partial = partial
        self.diagnostics = dict(diagnostics or {})


class TooLarge(PsdefError):
    pass


# representation counting

class UnsupportedFamily(PsdefError):
    pass


class AmbiguousProfile(PsdefError):
    pass
