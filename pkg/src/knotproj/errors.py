"""Exception types shared across the package."""


class KnotProjError(Exception):
    """Base class for all library errors."""


class DuplicateOccurrence(KnotProjError):
    """A crossing label does not occur exactly twice in the word."""


class NonSphere(KnotProjError):
    """The signed code does not embed in the sphere (face count != n + 2)."""


class Disconnected(KnotProjError):
    """Permutation data does not describe a single closed curve."""


class BoundExceeded(KnotProjError):
    """Requested brute-force search above the configured size bound."""


class InvalidSite(KnotProjError):
    """A move site does not match the curve it was applied to."""


class SurgeryBroken(KnotProjError):
    """A surgery produced an invalid curve; this is an internal bug."""


class NotReduced(KnotProjError):
    """Sequence rewriting requires a lune-free starting curve."""


class KindOutOfScope(KnotProjError):
    """Sequence rewriting only handles kink and lune moves."""


class NotPositive(KnotProjError):
    """Operation requires an all-positive knot diagram."""


class UnsupportedPrime(KnotProjError):
    """Fox coloring is only implemented for small odd primes."""


class CodecError(KnotProjError):
    """Corpus text could not be parsed; carries file position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self) -> str:
        base = super().__str__()
        if self.line:
            return f"{self.line}:{self.column}: {base}"
        return base


class SignMismatch(CodecError):
    """The two occurrences of a label carry different signs."""


class ValidationError(CodecError):
    """A parsed code failed curve validation."""
