"""Exception types shared across the library.

Every error raised by polyrep derives from :class:`PolyrepError`, so callers
can catch the whole family with one clause.  Operator failures additionally
derive from :class:`FusionError`, which groups the conditions under which the
combination operators are undefined.
"""

from __future__ import annotations

__all__ = [
    "PolyrepError",
    "ConstraintViolation",
    "DogmaticOpinion",
    "FusionError",
    "BothDogmatic",
    "PropositionMismatch",
    "RecommenderMismatch",
    "InvalidFrame",
    "UnknownState",
    "MalformedTopic",
    "LexiconUnavailable",
    "ParseError",
    "DegenerateDistribution",
]


class PolyrepError(Exception):
    """Base class for every error raised by this library."""


class ConstraintViolation(PolyrepError, ValueError):
    """A numeric component violates its allowed range or a sum constraint."""


class DogmaticOpinion(PolyrepError, ValueError):
    """A zero-uncertainty opinion was passed where the evidence mapping is undefined.

    The inverse evidence mapping divides by the uncertainty mass, so opinions
    with u = 0 correspond to an infinite amount of evidence and cannot be
    converted back to finite counts.
    """


class FusionError(PolyrepError):
    """Base class for failures of the combination operators."""

    @property
    def kind(self) -> str:
        """Short machine-friendly name of the failure (the class name)."""
        return type(self).__name__


class BothDogmatic(FusionError):
    """Consensus of two dogmatic opinions: the normalization factor kappa is 0."""


class PropositionMismatch(FusionError):
    """Two opinions about different propositions cannot be fused by consensus."""


class RecommenderMismatch(FusionError):
    """The trust opinion does not target the owner of the recommended opinion."""


class InvalidFrame(PolyrepError, ValueError):
    """A frame of discernment with unusable states (empty, duplicated, too many)."""


class UnknownState(PolyrepError, LookupError):
    """A state or subset references a label that is not part of the frame."""


class MalformedTopic(PolyrepError, ValueError):
    """Topic text that cannot be parsed into the five-section record.

    Attributes:
        line: 1-based line number where the problem was detected, when one
            can be attributed (duplicated or unknown section headers).  None
            for absences, which have no position.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message)
        self.line = line

    def __str__(self) -> str:
        base = super().__str__()
        if self.line is not None:
            return f"{base} (line {self.line})"
        return base


class LexiconUnavailable(PolyrepError):
    """A lexicon or stopword resource could not be read or parsed."""


class ParseError(PolyrepError, ValueError):
    """Plan or scenario text that does not match the grammar.

    Attributes:
        offset: 1-based byte offset of the failure point in the source text.
        expected: descriptions of the tokens that would have been accepted.
    """

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(message)
        self.offset = int(offset)
        self.expected = tuple(expected)

    def __str__(self) -> str:
        base = super().__str__()
        msg = f"{base} at offset {self.offset}"
        if self.expected:
            msg = f"{msg} (expected {' | '.join(self.expected)})"
        return msg


class DegenerateDistribution(PolyrepError, ValueError):
    """Evidence and base rate that pin the validation distribution to an endpoint.

    Raised when a Beta shape parameter is zero, which happens only for an
    extreme base rate (0 or 1) combined with zero matching evidence.
    """
