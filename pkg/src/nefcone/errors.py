class NefConeError(Exception):
    """Base class for library errors."""


class PresentationError(NefConeError, ValueError):
    """Malformed or inconsistent input data (tensors, discriminants, schemas)."""


class DomainError(NefConeError, ValueError):
    """A well-formed request the mathematics refuses (non-nef input, irrational degree too high, ...)."""


class UnsupportedError(DomainError):
    """Outside the supported range (cone rank > 3, algebraic degree > 2, ...)."""
