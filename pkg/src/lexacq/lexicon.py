"""Seed lexicons mapping lexemes to lexical types, grouped by word class.

File format: UTF-8, one entry per line as

    lexeme<TAB>word_class<TAB>lexical_type

with ``#``-prefixed comment lines and blank lines ignored.  Word-class tags
are ``noun``, ``verb``, ``adj`` and ``adv``.
"""

from __future__ import annotations

import enum
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable

log = logging.getLogger(__name__)


class LexiconError(ValueError):
    """Malformed or inconsistent lexicon input."""


class WordClass(enum.Enum):
    NOUN = "noun"
    VERB = "verb"
    ADJ = "adj"
    ADV = "adv"

    @classmethod
    def from_tag(cls, tag: str) -> "WordClass":
        try:
            return cls(tag)
        except ValueError:
            raise LexiconError("unknown word-class tag: %r" % tag) from None

    @classmethod
    def from_letter(cls, letter: str) -> "WordClass":
        """Resolve the single-letter tags used by cluster lexicons (N/V/A/R)."""
        try:
            return _LETTER_CLASSES[letter]
        except KeyError:
            raise LexiconError("unknown word-class letter: %r" % letter) from None

    @property
    def short(self) -> str:
        """Abbreviation used when rendering transformations (N, V, Adj, Adv)."""
        return _SHORT_NAMES[self.value]


_LETTER_CLASSES = {
    "N": WordClass.NOUN,
    "V": WordClass.VERB,
    "A": WordClass.ADJ,
    "R": WordClass.ADV,
}
_SHORT_NAMES = {"noun": "N", "verb": "V", "adj": "Adj", "adv": "Adv"}

#: Stable iteration order for word classes in outputs and reports.
CLASS_ORDER = (WordClass.NOUN, WordClass.VERB, WordClass.ADJ, WordClass.ADV)


@dataclass(frozen=True)
class LexicalType:
    """A leaf category of the grammar's type system, e.g. an intransitive noun."""

    name: str
    word_class: WordClass

    def __post_init__(self):
        if not self.name:
            raise LexiconError("lexical type name must be non-empty")


@dataclass(frozen=True)
class LexicalEntry:
    lexeme: str
    ltype: LexicalType

    def __post_init__(self):
        w = self.lexeme
        if not w or w != w.lower() or any(ch.isspace() for ch in w):
            raise LexiconError(
                "lexeme must be a non-empty lowercased single token: %r" % w
            )

    @property
    def word_class(self) -> WordClass:
        return self.ltype.word_class


class SeedLexicon:
    """Immutable gold lexicon: entries, per-lexeme word classes and the
    inventory of lexical types observed in the entries."""

    def __init__(self, entries: Iterable[LexicalEntry], n_duplicates: int = 0):
        self.entries = frozenset(entries)
        self.n_duplicates = n_duplicates
        by_lexeme: dict[str, set[LexicalEntry]] = defaultdict(set)
        by_name: dict[str, LexicalType] = {}
        for entry in self.entries:
            by_lexeme[entry.lexeme].add(entry)
            seen = by_name.setdefault(entry.ltype.name, entry.ltype)
            if seen != entry.ltype:
                raise LexiconError(
                    "lexical type %r declared under two word classes"
                    % entry.ltype.name
                )
        self._by_lexeme = {lex: frozenset(es) for lex, es in by_lexeme.items()}
        self.word_classes = {
            lex: frozenset(e.word_class for e in es)
            for lex, es in self._by_lexeme.items()
        }
        self.inventory = frozenset(e.ltype for e in self.entries)
        self._type_counts = Counter(e.ltype for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, SeedLexicon) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    @property
    def lexemes(self) -> tuple[str, ...]:
        return tuple(sorted(self._by_lexeme))

    def entries_of(self, lexeme: str) -> frozenset[LexicalEntry]:
        return self._by_lexeme.get(lexeme, frozenset())

    def classes_of(self, lexeme: str) -> frozenset[WordClass]:
        return self.word_classes.get(lexeme, frozenset())

    def count(self, ltype: LexicalType) -> int:
        """Number of entries carrying the given lexical type."""
        return self._type_counts.get(ltype, 0)

    def types_of_class(self, word_class: WordClass) -> set[LexicalType]:
        return {t for t in self.inventory if t.word_class == word_class}

    def restrict(self, lexemes: Iterable[str]) -> "SeedLexicon":
        """Sub-lexicon containing only the entries of the given lexemes."""
        keep = set(lexemes)
        return SeedLexicon(e for e in self.entries if e.lexeme in keep)


def load_seed_lexicon(source: Iterable[str]) -> SeedLexicon:
    """Parse seed-lexicon lines into a :class:`SeedLexicon`.

    Duplicate entry lines are collapsed; their count is logged as a warning
    and recorded on the result.  Raises :class:`LexiconError` on malformed
    lines, unknown word-class tags, multiword lexemes, or a lexical type
    declared under two word classes.
    """
    entries: set[LexicalEntry] = set()
    n_duplicates = 0
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise LexiconError(
                "line %d: expected 3 tab-separated fields, got %d"
                % (lineno, len(fields))
            )
        lexeme, tag, type_name = (f.strip() for f in fields)
        word_class = WordClass.from_tag(tag)
        lexeme = lexeme.lower()
        try:
            entry = LexicalEntry(lexeme, LexicalType(type_name, word_class))
        except LexiconError as exc:
            raise LexiconError("line %d: %s" % (lineno, exc)) from None
        if entry in entries:
            n_duplicates += 1
        else:
            entries.add(entry)
    if n_duplicates:
        log.warning("collapsed %d duplicate lexicon lines", n_duplicates)
    return SeedLexicon(entries, n_duplicates=n_duplicates)


def serialize_seed_lexicon(lexicon: SeedLexicon) -> str:
    """Render a lexicon back to its file format, deterministically ordered."""
    lines = sorted(
        (e.lexeme, e.word_class.value, e.ltype.name) for e in lexicon.entries
    )
    return "".join("%s\t%s\t%s\n" % line for line in lines)


def filter_inventory(lexicon: SeedLexicon, min_entries: int) -> set[LexicalType]:
    """Lexical types with at least ``min_entries`` entries in the lexicon."""
    if min_entries < 1:
        raise ValueError("min_entries must be >= 1")
    return {t for t in lexicon.inventory if lexicon.count(t) >= min_entries}


def majority_default(word_class: WordClass, lexicon: SeedLexicon) -> LexicalType:
    """The most populous lexical type of the word class; ties break
    lexicographically by type name."""
    candidates = lexicon.types_of_class(word_class)
    if not candidates:
        raise LexiconError(
            "word class %s has no entries in the lexicon" % word_class.value
        )
    return min(candidates, key=lambda t: (-lexicon.count(t), t.name))
