"""Entity dictionary, fuzzy mention recognition, and mention-aware tokenization.

The dictionary maps every entity name in the graph, plus a small set of
class words ("papers", "authors", ...), to a typed entry.  Recognition
scans a query for dictionary keys with at most one edit of slack, and
tokenization then treats each recognized mention as a single token no
matter how many words it spans.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Sequence


class EntityType(str, Enum):
    PAPER = "Paper"
    AUTHOR = "Author"
    TERM = "Term"
    SOURCE = "Source"
    ORGANIZATION = "Organization"


# Marker used in serialized dictionary values for class entries, e.g. a
# value of "class_Paper" for the key "papers".
CLASS_MARKER = "class_"

DEFAULT_CLASS_SURFACES: Mapping[EntityType, tuple[str, ...]] = {
    EntityType.PAPER: ("paper", "papers"),
    EntityType.AUTHOR: ("author", "authors"),
    EntityType.TERM: ("term", "terms"),
    EntityType.SOURCE: ("source", "sources"),
    EntityType.ORGANIZATION: ("organization", "organizations"),
}

# Spans and keys shorter than this never fuzzy-match; one edit on a two
# letter word changes it into a different word outright.
MIN_FUZZY_LENGTH = 3

_WS_RE = re.compile(r"\s+")
_WORD_RE = re.compile(r"\S+")
_PUNCT_CHARS = ",;:!?"
_POSSESSIVE_SUFFIXES = ("'s", "’s")


@dataclass(frozen=True)
class DictEntry:
    """One dictionary value: an entity type plus, for instances, the name
    exactly as it appears in the dataset."""

    etype: EntityType
    canonical: str | None = None  # None marks a class entry

    @property
    def is_class(self) -> bool:
        return self.canonical is None

    @property
    def value(self) -> str:
        """Serialized form: "class_Paper" for classes, "Paper" for instances."""
        if self.is_class:
            return f"{CLASS_MARKER}{self.etype.value}"
        return self.etype.value


@dataclass
class Dictionary:
    """Surface-to-entry lookup with a length index for approximate matching.

    Built once per dataset and treated as immutable afterwards.
    """

    entries: dict[str, DictEntry]
    rejected: list[str] = field(default_factory=list)
    _by_length: dict[int, list[str]] = field(default_factory=dict, repr=False)
    max_key_length: int = 0

    def __post_init__(self) -> None:
        self._by_length = {}
        for key in self.entries:
            self._by_length.setdefault(len(key), []).append(key)
        self.max_key_length = max(self._by_length, default=0)

    def __len__(self) -> int:
        return len(self.entries)

    def exact(self, surface: str) -> DictEntry | None:
        return self.entries.get(normalize_surface(surface))

    def fuzzy_keys(self, normalized: str) -> Iterator[str]:
        """Keys within one edit of `normalized`, not counting exact hits."""
        n = len(normalized)
        if n < MIN_FUZZY_LENGTH:
            return
        for length in (n - 1, n, n + 1):
            if length < MIN_FUZZY_LENGTH:
                continue
            for key in self._by_length.get(length, ()):
                if key != normalized and _within_one_edit(normalized, key):
                    yield key


@dataclass(frozen=True)
class Mention:
    """A recognized dictionary key occurrence inside a query.

    start/end are character offsets into the query (half-open), surface is
    the query text as typed, and distance is the edit distance to the
    matched key (0 or 1).
    """

    start: int
    end: int
    surface: str
    entry: DictEntry
    distance: int


@dataclass(frozen=True)
class Token:
    """One query token; mention tokens cover a whole mention, the rest are
    single words or punctuation."""

    index: int
    text: str
    mention: Mention | None = None


def normalize_surface(text: str) -> str:
    """Casefold and collapse runs of whitespace to single spaces."""
    return _WS_RE.sub(" ", text.casefold().strip())


# ---------------------------------------------------------------------------
# Dictionary construction
# ---------------------------------------------------------------------------

def build_dictionary(
    records: Iterable[tuple[str, EntityType]],
    class_surfaces: Mapping[EntityType, tuple[str, ...]] | None = None,
) -> Dictionary:
    """Build the lookup from class words and (name, type) dataset records.

    Class entries are inserted first and the first writer of a surface
    wins, so an instance whose name collides with a class word (or with an
    earlier record) does not displace it.  Records with empty names are
    reported in `rejected` and skipped.
    """
    surfaces = class_surfaces or DEFAULT_CLASS_SURFACES
    entries: dict[str, DictEntry] = {}
    rejected: list[str] = []
    for etype, words in surfaces.items():
        for word in words:
            entries.setdefault(normalize_surface(word), DictEntry(etype))
    for name, etype in records:
        key = normalize_surface(name)
        if not key:
            rejected.append(f"{etype.value}: empty name")
            continue
        entries.setdefault(key, DictEntry(etype, canonical=name))
    return Dictionary(entries=entries, rejected=rejected)


# ---------------------------------------------------------------------------
# Edit distance
# ---------------------------------------------------------------------------

def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance with unit costs, two-row dynamic program."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(min(
                previous[j] + 1,
                current[j - 1] + 1,
                previous[j - 1] + (ca != cb),
            ))
        previous = current
    return previous[-1]


def _within_one_edit(a: str, b: str) -> bool:
    # Single-pass check used on the recognition hot path.
    la, lb = len(a), len(b)
    if abs(la - lb) > 1:
        return False
    if la == lb:
        mismatches = 0
        for ca, cb in zip(a, b):
            if ca != cb:
                mismatches += 1
                if mismatches > 1:
                    return False
        return True
    if la < lb:
        a, b, la, lb = b, a, lb, la
    # a is longer by one: allow a single skipped character in a.
    i = j = 0
    skipped = False
    while i < la and j < lb:
        if a[i] == b[j]:
            i += 1
            j += 1
        elif skipped:
            return False
        else:
            skipped = True
            i += 1
    return True


# ---------------------------------------------------------------------------
# Recognition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Unit:
    start: int
    end: int
    is_word: bool  # False for punctuation and possessive markers


def _segment_units(query: str) -> list[_Unit]:
    """Split into word units, peeling trailing commas and "'s" into their
    own units so mention spans can end at a word stem."""
    units: list[_Unit] = []
    for match in _WORD_RE.finditer(query):
        start, end = match.span()
        word = match.group()
        while start < end and word[0] in _PUNCT_CHARS:
            units.append(_Unit(start, start + 1, False))
            start += 1
            word = word[1:]
        trailing: list[_Unit] = []
        while word:
            if word[-1] in _PUNCT_CHARS:
                trailing.append(_Unit(end - 1, end, False))
                end -= 1
                word = word[:-1]
                continue
            lowered = word.casefold()
            suffix = next((s for s in _POSSESSIVE_SUFFIXES if lowered.endswith(s) and len(word) > 2), None)
            if suffix:
                trailing.append(_Unit(end - 2, end, False))
                end -= 2
                word = word[:-2]
                continue
            break
        if start < end:
            is_word = word.casefold() not in _POSSESSIVE_SUFFIXES
            units.append(_Unit(start, end, is_word))
        units.extend(reversed(trailing))
    return units


@dataclass(frozen=True)
class _Candidate:
    start: int
    end: int
    entry: DictEntry
    distance: int
    key: str


def recognize(query: str, dictionary: Dictionary) -> list[Mention]:
    """Find maximal non-overlapping dictionary matches in the query.

    Candidate spans are word-aligned sequences; matching is case
    insensitive with at most one edit.  Overlaps are resolved by: longer
    span, then exact over distance-1, then leftmost, then instance over
    class.
    """
    units = _segment_units(query)
    word_positions = [i for i, u in enumerate(units) if u.is_word]
    candidates: list[_Candidate] = []
    span_cap = dictionary.max_key_length + 1
    for wi, start_idx in enumerate(word_positions):
        start = units[start_idx].start
        for end_idx in word_positions[wi:]:
            end = units[end_idx].end
            if end - start > span_cap:
                break
            normalized = normalize_surface(query[start:end])
            exact_entry = dictionary.entries.get(normalized)
            if exact_entry is not None:
                candidates.append(_Candidate(start, end, exact_entry, 0, normalized))
            if len(normalized) >= MIN_FUZZY_LENGTH:
                for key in dictionary.fuzzy_keys(normalized):
                    candidates.append(_Candidate(start, end, dictionary.entries[key], 1, key))
    candidates.sort(key=lambda c: (-(c.end - c.start), c.distance, c.start, c.entry.is_class, c.key))
    chosen: list[_Candidate] = []
    taken: list[tuple[int, int]] = []
    for cand in candidates:
        if any(cand.start < e and s < cand.end for s, e in taken):
            continue
        chosen.append(cand)
        taken.append((cand.start, cand.end))
    chosen.sort(key=lambda c: c.start)
    return [
        Mention(c.start, c.end, query[c.start:c.end], c.entry, c.distance)
        for c in chosen
    ]


# ---------------------------------------------------------------------------
# Tokenization
# ---------------------------------------------------------------------------

def tokenize(query: str, mentions: Sequence[Mention]) -> list[Token]:
    """Tokenize with each mention as a single token.

    Text between mentions splits on whitespace, with commas and possessive
    markers as their own tokens.  Token indices run from 0 and the token
    texts concatenate back to the query modulo whitespace.
    """
    tokens: list[Token] = []
    pos = 0

    def emit_gap(gap_start: int, gap_end: int) -> None:
        for unit in _segment_units(query[gap_start:gap_end]):
            tokens.append(Token(len(tokens), query[gap_start + unit.start:gap_start + unit.end]))

    for mention in mentions:
        emit_gap(pos, mention.start)
        tokens.append(Token(len(tokens), mention.surface, mention))
        pos = mention.end
    emit_gap(pos, len(query))
    return tokens


__all__ = [
    "CLASS_MARKER",
    "DEFAULT_CLASS_SURFACES",
    "DictEntry",
    "Dictionary",
    "EntityType",
    "Mention",
    "Token",
    "build_dictionary",
    "edit_distance",
    "normalize_surface",
    "recognize",
    "tokenize",
]
