"""Topic records with five representations of one information need.

A topic bundles five textual representations of the same underlying need,
written from different cognitive angles:

    1. the immediate request
    2. the underlying work task or problem
    3. the searcher's background knowledge
    4. what an ideal answer would look like
    5. a comma-separated keyword list

Topic files are plain text.  Each representation starts with an exact
header at column 0, ``Representation <i>:``, and runs until the next header
or end of input.  Section text is whitespace-normalized (runs of blanks and
newlines collapse to single spaces).  Sections may appear in any order but
each must appear exactly once.  A file may hold several topics, each opened
by a ``Topic: <id>`` header line; a file without any ``Topic:`` line is a
single topic with id "unnamed".
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ConstraintViolation, MalformedTopic

__all__ = [
    "REPRESENTATION_COUNT",
    "Topic",
    "Observer",
    "parse_topic",
    "parse_topics",
    "serialize_topic",
]

REPRESENTATION_COUNT = 5

_SECTION_RE = re.compile(r"^Representation (\d+):(.*)$")
_TOPIC_RE = re.compile(r"^Topic:(.*)$")
_EDGE_PUNCT_RE = re.compile(r"^[\W_]+|[\W_]+$")


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def _parse_keywords(text: str) -> tuple[str, ...]:
    """Split the keyword representation on commas.

    Keywords are lowercased, whitespace-normalized, and stripped of leading
    and trailing punctuation; empty chunks are dropped.  Multi-word
    keywords keep their internal spaces.
    """
    keywords = []
    for chunk in text.split(","):
        keyword = _EDGE_PUNCT_RE.sub("", _normalize_ws(chunk).lower())
        if keyword:
            keywords.append(keyword)
    return tuple(keywords)


@dataclass(frozen=True)
class Topic:
    """One information need with its five representations.

    ``representations`` holds the whitespace-normalized section texts in
    canonical order (index 0 is Representation 1).  Representations 1-4 may
    be empty strings; representation 5 must parse to at least one keyword.
    """

    id: str
    representations: tuple[str, str, str, str, str]
    keywords: tuple[str, ...] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise MalformedTopic("topic id must be a non-empty string")
        if len(self.representations) != REPRESENTATION_COUNT:
            raise MalformedTopic(
                f"a topic needs exactly {REPRESENTATION_COUNT} representations, "
                f"got {len(self.representations)}"
            )
        keywords = _parse_keywords(self.representations[4])
        if not keywords:
            raise MalformedTopic(
                f"topic {self.id!r}: representation 5 contains no keywords"
            )
        object.__setattr__(self, "keywords", keywords)

    def representation(self, index: int) -> str:
        """Text of one representation by its 1-based index."""
        if not 1 <= index <= REPRESENTATION_COUNT:
            raise ConstraintViolation(
                f"representation index must be in 1..{REPRESENTATION_COUNT}, got {index!r}"
            )
        return self.representations[index - 1]


@dataclass(frozen=True)
class Observer:
    """The virtual observer behind one representation of one topic."""

    id: str
    topic: str
    representation_index: int

    def __post_init__(self) -> None:
        if not 1 <= self.representation_index <= REPRESENTATION_COUNT:
            raise ConstraintViolation(
                "representation index must be in "
                f"1..{REPRESENTATION_COUNT}, got {self.representation_index!r}"
            )

    @classmethod
    def for_representation(cls, topic_id: str, index: int) -> "Observer":
        return cls(f"rep{index}@{topic_id}", topic_id, index)


def _parse_block(lines: list[str], first_line: int, topic_id: str) -> Topic:
    """Parse the lines of one topic block (without its Topic: header)."""
    sections: dict[int, list[str]] = {}
    current: list[str] | None = None
    for offset, line in enumerate(lines):
        line_no = first_line + offset
        section = _SECTION_RE.match(line)
        if section:
            index = int(section.group(1))
            if not 1 <= index <= REPRESENTATION_COUNT:
                raise MalformedTopic(
                    f"topic {topic_id!r}: unknown section 'Representation {index}'",
                    line=line_no,
                )
            if index in sections:
                raise MalformedTopic(
                    f"topic {topic_id!r}: duplicated section 'Representation {index}'",
                    line=line_no,
                )
            current = [section.group(2)]
            sections[index] = current
            continue
        if _TOPIC_RE.match(line):
            raise MalformedTopic(
                f"topic {topic_id!r}: unexpected 'Topic:' header inside a topic",
                line=line_no,
            )
        if current is not None:
            current.append(line)
        # Text before the first section header is tolerated and ignored.
    for index in range(1, REPRESENTATION_COUNT + 1):
        if index not in sections:
            raise MalformedTopic(f"topic {topic_id!r}: missing section 'Representation {index}'")
    texts = tuple(
        _normalize_ws(" ".join(sections[index])) for index in range(1, REPRESENTATION_COUNT + 1)
    )
    return Topic(topic_id, texts)  # type: ignore[arg-type]


def parse_topic(text: str) -> Topic:
    """Parse a single topic from text.

    An optional leading ``Topic: <id>`` line names the topic; without one
    the id defaults to "unnamed".
    """
    lines = text.splitlines()
    topic_id = "unnamed"
    start = 0
    for i, line in enumerate(lines):
        match = _TOPIC_RE.match(line)
        if match:
            topic_id = match.group(1).strip()
            if not topic_id:
                raise MalformedTopic("empty topic id", line=i + 1)
            start = i + 1
            break
        if _SECTION_RE.match(line):
            break
    return _parse_block(lines[start:], start + 1, topic_id)


def parse_topics(text: str) -> tuple[Topic, ...]:
    """Parse a topic file that may hold zero or more topics.

    Topics are delimited by ``Topic: <id>`` header lines.  A file without
    any such line is a single unnamed topic, and a file with no content at
    all yields zero topics.
    """
    lines = text.splitlines()
    headers: list[tuple[int, str]] = []
    for i, line in enumerate(lines):
        match = _TOPIC_RE.match(line)
        if match:
            topic_id = match.group(1).strip()
            if not topic_id:
                raise MalformedTopic("empty topic id", line=i + 1)
            headers.append((i, topic_id))
    if not headers:
        if not text.strip():
            return ()
        if any(_SECTION_RE.match(line) for line in lines):
            return (parse_topic(text),)
        raise MalformedTopic("no topic sections found", line=1)
    for i in range(headers[0][0]):
        if _SECTION_RE.match(lines[i]):
            raise MalformedTopic(
                "representation section before any 'Topic:' header", line=i + 1
            )
    topics = []
    bounds = [index for index, _ in headers] + [len(lines)]
    for (start, topic_id), end in zip(headers, bounds[1:]):
        topics.append(_parse_block(lines[start + 1 : end], start + 2, topic_id))
    return tuple(topics)


def serialize_topic(topic: Topic) -> str:
    """Render a topic back to its file format (canonical section order)."""
    parts = [f"Topic: {topic.id}"]
    for index in range(1, REPRESENTATION_COUNT + 1):
        parts.append(f"Representation {index}: {topic.representation(index)}")
    return "\n".join(parts) + "\n"
