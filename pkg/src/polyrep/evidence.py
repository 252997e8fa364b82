"""Evidence extraction: from representation text to observation counts.

Each representation of a topic acts as an independent observer.  Its text
is tokenized (lowercased, split on non-alphanumeric runs), stopwords are
dropped, and the surviving content tokens are counted:

    positive  r = number of content tokens
    negative  s = number of content tokens whose lexicon sense count
                  exceeds 1 (ambiguous terms speak against the topic
                  being well represented)

Both resources are optional.  Without a stopword list every token is
content; without a lexicon every term counts as unambiguous and s = 0.

Resources are loaded once per path and shared read-only.  The package
bundles a small sense-count lexicon and stopword list for experimentation;
see :func:`bundled_lexicon_path` and :func:`bundled_stopwords_path`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Mapping

from .errors import ConstraintViolation, LexiconUnavailable
from .opinions import EvidenceCount, Opinion, from_evidence
from .topics import REPRESENTATION_COUNT, Observer, Topic

__all__ = [
    "ExtractorConfig",
    "tokenize",
    "extract_evidence",
    "representation_opinion",
    "bundled_lexicon_path",
    "bundled_stopwords_path",
]

# Alphanumeric runs; underscores and all punctuation separate tokens.
_TOKEN_RE = re.compile(r"[^\W_]+")


def tokenize(text: str) -> list[str]:
    """Lowercase and split text on non-alphanumeric runs."""
    return _TOKEN_RE.findall(text.lower())


@lru_cache(maxsize=None)
def _load_lexicon(path: str) -> Mapping[str, int]:
    """Read a tab-separated term/sense-count lexicon."""
    senses: dict[str, int] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise LexiconUnavailable(f"cannot read lexicon {path!r}: {exc}") from exc
    for line_no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconUnavailable(
                f"lexicon {path!r} line {line_no}: expected 'term<TAB>sense_count'"
            )
        term, count_text = parts[0].strip().lower(), parts[1].strip()
        try:
            count = int(count_text)
        except ValueError:
            raise LexiconUnavailable(
                f"lexicon {path!r} line {line_no}: sense count {count_text!r} is not an integer"
            ) from None
        if not term or count < 1:
            raise LexiconUnavailable(
                f"lexicon {path!r} line {line_no}: term and positive sense count required"
            )
        senses[term] = count
    return MappingProxyType(senses)


@lru_cache(maxsize=None)
def _load_stopwords(path: str) -> frozenset[str]:
    """Read a one-term-per-line stopword list."""
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise LexiconUnavailable(f"cannot read stopword list {path!r}: {exc}") from exc
    return frozenset(line.strip().lower() for line in lines if line.strip())


@dataclass(frozen=True)
class ExtractorConfig:
    """Paths to the optional extraction resources.

    Either path may be None, disabling the corresponding filter.  Paths
    must reference readable files when first used; failures raise
    :class:`LexiconUnavailable`.
    """

    lexicon_path: str | Path | None = None
    stopword_path: str | Path | None = None

    def lexicon(self) -> Mapping[str, int]:
        if self.lexicon_path is None:
            return MappingProxyType({})
        return _load_lexicon(str(self.lexicon_path))

    def stopwords(self) -> frozenset[str]:
        if self.stopword_path is None:
            return frozenset()
        return _load_stopwords(str(self.stopword_path))

    def load(self) -> None:
        """Force both resources to load, surfacing errors early."""
        self.lexicon()
        self.stopwords()


def extract_evidence(
    topic: Topic, representation_index: int, cfg: ExtractorConfig | None = None
) -> EvidenceCount:
    """Count the evidence one representation contributes.

    Deterministic: the same text and config always yield the same counts.
    Empty representations yield (0, 0).
    """
    if cfg is None:
        cfg = ExtractorConfig()
    if not 1 <= representation_index <= REPRESENTATION_COUNT:
        raise ConstraintViolation(
            f"representation index must be in 1..{REPRESENTATION_COUNT}, "
            f"got {representation_index!r}"
        )
    stopwords = cfg.stopwords()
    senses = cfg.lexicon()
    content = [t for t in tokenize(topic.representation(representation_index)) if t not in stopwords]
    ambiguous = sum(1 for t in content if senses.get(t, 1) > 1)
    return EvidenceCount(float(len(content)), float(ambiguous))


def representation_opinion(
    topic: Topic,
    representation_index: int,
    cfg: ExtractorConfig | None = None,
    base_rate: float = 0.5,
) -> Opinion:
    """The opinion a representation's virtual observer holds about its topic.

    The owner is ``rep<i>@<topic_id>`` and the proposition is the topic id,
    so opinions extracted from the same topic can be fused directly.
    """
    observer = Observer.for_representation(topic.id, representation_index)
    ev = extract_evidence(topic, representation_index, cfg)
    return from_evidence(observer.id, topic.id, ev, base_rate)


def bundled_lexicon_path() -> Path:
    """Path to the sense-count lexicon shipped with the package."""
    return Path(str(resources.files("polyrep") / "data" / "lexicon.tsv"))


def bundled_stopwords_path() -> Path:
    """Path to the stopword list shipped with the package."""
    return Path(str(resources.files("polyrep") / "data" / "stopwords.txt"))
