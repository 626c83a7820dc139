"""Preprocessed-corpus readers and positional/structural feature extractors.

Three corpus levels are supported, all line-oriented with a blank line
terminating each sentence:

* ``tagged``  -- token lines ``surface<TAB>lemma<TAB>pos``
* ``chunked`` -- token lines with a fourth ``chunk_bio`` column (CoNLL-style
  ``B-NP``/``I-NP``/``O`` labels)
* ``parsed``  -- tagged-style token lines followed by dependency lines
  ``#DEP<TAB>relation<TAB>head_index<TAB>dep_index`` with 1-based indices

An optional first line ``#RELATIONS rel1,rel2,...`` declares the dependency
relation inventory; other ``#`` lines are comments.  Each corpus level feeds
a fixed inventory of 39 feature types.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

log = logging.getLogger(__name__)

#: Reserved feature instance for positions outside the sentence.
NULL = "<NULL>"

#: Default dependency relation inventory (overridable via #RELATIONS).
DEFAULT_RELATIONS = (
    "aux",
    "ccomp",
    "cmod",
    "conj",
    "csubj",
    "det",
    "dobj",
    "iobj",
    "ncmod",
    "ncsubj",
    "obj2",
    "xcomp",
    "xmod",
    "xsubj",
)

#: Relation whose edges additionally feed the coordination feature types.
COORD_RELATION = "conj"

LEVELS = ("tagged", "chunked", "parsed")


class CorpusError(ValueError):
    """Malformed corpus input."""


@dataclass(frozen=True)
class Token:
    surface: str
    lemma: str
    pos: str
    chunk_bio: str | None = None


@dataclass(frozen=True)
class Sentence:
    """A sentence with optional dependency tuples.

    ``deps`` holds ``(relation, head_index, dep_index)`` triples with 1-based
    token indices, matching the corpus file convention.
    """

    tokens: tuple[Token, ...]
    deps: frozenset[tuple[str, int, int]] | None = None


@dataclass(frozen=True)
class FeatureEvent:
    lexeme: str
    ftype: str
    instance: str


def parse_corpus(
    source: Iterable[str], level: str, max_sentence_len: int = 200
) -> Iterator[Sentence]:
    """Yield sentences from a corpus stream at the given level.

    Sentences longer than ``max_sentence_len`` tokens are skipped with a
    warning.  Raises :class:`CorpusError` on column-count mismatches or
    dependency indices outside the sentence.
    """
    if level not in LEVELS:
        raise CorpusError("unknown corpus level: %r" % level)
    n_cols = 4 if level == "chunked" else 3
    tokens: list[Token] = []
    deps: set[tuple[str, int, int]] = set()
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n")
        if line.startswith("#DEP"):
            if level != "parsed":
                raise CorpusError("line %d: #DEP line in %s corpus" % (lineno, level))
            fields = line.split("\t")
            if len(fields) != 4:
                raise CorpusError("line %d: expected #DEP with 3 fields" % lineno)
            _, rel, head, dep = fields
            try:
                deps.add((rel, int(head), int(dep)))
            except ValueError:
                raise CorpusError("line %d: non-integer dependency index" % lineno)
            continue
        if line.startswith("#"):
            continue
        if not line.strip():
            if tokens:
                yield from _finish_sentence(tokens, deps, level, max_sentence_len, lineno)
                tokens, deps = [], set()
            continue
        fields = line.split("\t")
        if len(fields) != n_cols:
            raise CorpusError(
                "line %d: expected %d columns, got %d" % (lineno, n_cols, len(fields))
            )
        if level == "chunked":
            surface, lemma, pos, chunk = fields
            tokens.append(Token(surface, lemma, pos, chunk))
        else:
            surface, lemma, pos = fields
            tokens.append(Token(surface, lemma, pos))
    if tokens:
        yield from _finish_sentence(tokens, deps, level, max_sentence_len, lineno="end")


def _finish_sentence(tokens, deps, level, max_sentence_len, lineno):
    if len(tokens) > max_sentence_len:
        log.warning(
            "skipping %d-token sentence ending at line %s (bound %d)",
            len(tokens),
            lineno,
            max_sentence_len,
        )
        return
    for rel, head, dep in deps:
        if not (1 <= head <= len(tokens) and 1 <= dep <= len(tokens)):
            raise CorpusError(
                "dependency index out of range in sentence ending at line %s" % lineno
            )
    if level == "parsed":
        yield Sentence(tuple(tokens), frozenset(deps))
    else:
        yield Sentence(tuple(tokens))


def load_corpus(
    path, level: str, max_sentence_len: int = 200
) -> tuple[list[Sentence], tuple[str, ...] | None]:
    """Read a corpus file, returning its sentences and the relation inventory
    declared in a leading ``#RELATIONS`` header (None when absent)."""
    relations = None
    with open(path, encoding="utf-8") as fh:
        first = fh.readline()
        rest: Iterable[str]
        if first.startswith("#RELATIONS"):
            spec = first[len("#RELATIONS") :].strip()
            relations = tuple(r.strip() for r in spec.split(",") if r.strip())
            rest = fh
        else:
            rest = [first] + list(fh) if first else fh
        sentences = list(parse_corpus(rest, level, max_sentence_len))
    return sentences, relations


# ---------------------------------------------------------------------------
# Feature-type inventories (39 per corpus level)

_TAGGER_POS_POSITIONS = (-4, -3, -2, -1, 0, 1, 2, 3, 4)
_TAGGER_WORD_POSITIONS = (-4, -3, -2, -1, 1, 2, 3, 4)
_TAGGER_BITAG_PAIRS = (
    (-4, -1), (-4, 0), (-3, -2), (-3, -1), (-3, 0), (-2, -1), (-2, 0), (-1, 0),
    (0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3),
)
_TAGGER_BIWORD_PAIRS = ((-3, -2), (-3, -1), (-2, -1), (1, 2), (1, 3), (2, 3))

_CHUNKER_POS_POSITIONS = (-3, -2, -1, 0, 1, 2, 3)
_CHUNKER_WORD_POSITIONS = (-3, -2, -1, 1, 2, 3)
_CHUNK_POSITIONS = (-4, -3, -2, -1, 0, 1, 2, 3, 4)
_CHUNK_HEAD_POSITIONS = (-3, -2, -1, 1, 2, 3)
_BICHUNK_PAIRS = ((-2, -1), (-2, 0), (-1, 0), (0, 1), (0, 2), (1, 2))

_PARSER_POS_POSITIONS = (-2, -1, 0, 1, 2)
_PARSER_WORD_POSITIONS = (-2, -1, 1, 2)


def tagger_feature_types() -> tuple[str, ...]:
    return (
        tuple("pos[%d]" % p for p in _TAGGER_POS_POSITIONS)
        + tuple("word[%d]" % p for p in _TAGGER_WORD_POSITIONS)
        + tuple("bitag[%d,%d]" % pq for pq in _TAGGER_BITAG_PAIRS)
        + tuple("biword[%d,%d]" % pq for pq in _TAGGER_BIWORD_PAIRS)
    )


def chunker_feature_types() -> tuple[str, ...]:
    return (
        ("mod_head_word", "mod_chunk_type", "head_mod_word", "head_mod_pos",
         "head_mod_wordpos")
        + tuple("pos[%d]" % p for p in _CHUNKER_POS_POSITIONS)
        + tuple("word[%d]" % p for p in _CHUNKER_WORD_POSITIONS)
        + tuple("chunk[%d]" % p for p in _CHUNK_POSITIONS)
        + tuple("chunkhead[%d]" % p for p in _CHUNK_HEAD_POSITIONS)
        + tuple("bichunk[%d,%d]" % pq for pq in _BICHUNK_PAIRS)
    )


def parser_feature_types(
    relations: Sequence[str] = DEFAULT_RELATIONS,
) -> tuple[str, ...]:
    return (
        tuple("pos[%d]" % p for p in _PARSER_POS_POSITIONS)
        + tuple("word[%d]" % p for p in _PARSER_WORD_POSITIONS)
        + ("conj_word", "conj_pos")
        + tuple("head[%s]" % r for r in relations)
        + tuple("mod[%s]" % r for r in relations)
    )


# ---------------------------------------------------------------------------
# Extraction

def _pos_at(tokens: Sequence[Token], i: int) -> str:
    return tokens[i].pos if 0 <= i < len(tokens) else NULL

def _lemma_at(tokens: Sequence[Token], i: int) -> str:
    return tokens[i].lemma if 0 <= i < len(tokens) else NULL


def _emit(events: Counter, occurrence: set, lexeme: str) -> None:
    # One event per (feature type, instance) per token occurrence, so a
    # vector's raw count never exceeds the lexeme's occurrence count.
    for ftype, instance in occurrence:
        events[FeatureEvent(lexeme, ftype, instance)] += 1


def extract_tagger_features(
    sentences: Iterable[Sentence], targets: set[str]
) -> Counter:
    """POS-window features: each target occurrence fires all 39 feature
    types exactly once, with ``<NULL>`` filling out-of-sentence positions."""
    events: Counter = Counter()
    if not targets:
        return events
    for sent in sentences:
        toks = sent.tokens
        for i, tok in enumerate(toks):
            if tok.lemma not in targets:
                continue
            occ: set[tuple[str, str]] = set()
            for p in _TAGGER_POS_POSITIONS:
                occ.add(("pos[%d]" % p, _pos_at(toks, i + p)))
            for p in _TAGGER_WORD_POSITIONS:
                occ.add(("word[%d]" % p, _lemma_at(toks, i + p)))
            for p, q in _TAGGER_BITAG_PAIRS:
                occ.add(
                    ("bitag[%d,%d]" % (p, q),
                     "%s+%s" % (_pos_at(toks, i + p), _pos_at(toks, i + q)))
                )
            for p, q in _TAGGER_BIWORD_PAIRS:
                occ.add(
                    ("biword[%d,%d]" % (p, q),
                     "%s+%s" % (_lemma_at(toks, i + p), _lemma_at(toks, i + q)))
                )
            _emit(events, occ, tok.lemma)
    return events


def _chunk_units(tokens: Sequence[Token]) -> list[tuple[str, list[int]]]:
    """Partition a chunked sentence into units: BIO chunks plus singleton
    units of type ``O`` for unchunked tokens.  A unit's head is its last
    token."""
    units: list[tuple[str, list[int]]] = []
    for i, tok in enumerate(tokens):
        label = tok.chunk_bio or "O"
        if label == "O":
            units.append(("O", [i]))
            continue
        mark, _, ctype = label.partition("-")
        if (
            mark == "I"
            and units
            and units[-1][0] == ctype
            and units[-1][1][-1] == i - 1
            and (tokens[i - 1].chunk_bio or "O") != "O"
        ):
            units[-1][1].append(i)
        else:
            # B-X, or an I-X that does not continue a compatible chunk.
            units.append((ctype, [i]))
    return units


def extract_chunker_features(
    sentences: Iterable[Sentence], targets: set[str]
) -> Counter:
    """Chunk-structure features: intra-chunk head/modifier relations plus
    token-positional POS/word windows and chunk-granular context windows."""
    events: Counter = Counter()
    if not targets:
        return events
    for sent in sentences:
        toks = sent.tokens
        units = _chunk_units(toks)
        unit_of = {}
        for u, (_, members) in enumerate(units):
            for i in members:
                unit_of[i] = u
        for i, tok in enumerate(toks):
            if tok.lemma not in targets:
                continue
            occ: set[tuple[str, str]] = set()
            u = unit_of[i]
            ctype, members = units[u]
            head = members[-1]
            if i == head:
                for m in members[:-1]:
                    occ.add(("head_mod_word", toks[m].lemma))
                    occ.add(("head_mod_pos", toks[m].pos))
                    occ.add(("head_mod_wordpos", "%s/%s" % (toks[m].lemma, toks[m].pos)))
            else:
                occ.add(("mod_head_word", toks[head].lemma))
                occ.add(("mod_chunk_type", ctype))
            for p in _CHUNKER_POS_POSITIONS:
                occ.add(("pos[%d]" % p, _pos_at(toks, i + p)))
            for p in _CHUNKER_WORD_POSITIONS:
                occ.add(("word[%d]" % p, _lemma_at(toks, i + p)))
            for p in _CHUNK_POSITIONS:
                occ.add(("chunk[%d]" % p, _unit_type(units, u + p)))
            for p in _CHUNK_HEAD_POSITIONS:
                occ.add(("chunkhead[%d]" % p, _unit_head_lemma(units, toks, u + p)))
            for p, q in _BICHUNK_PAIRS:
                occ.add(
                    ("bichunk[%d,%d]" % (p, q),
                     "%s+%s" % (_unit_type(units, u + p), _unit_type(units, u + q)))
                )
            _emit(events, occ, tok.lemma)
    return events


def _unit_type(units, u: int) -> str:
    return units[u][0] if 0 <= u < len(units) else NULL

def _unit_head_lemma(units, tokens, u: int) -> str:
    return tokens[units[u][1][-1]].lemma if 0 <= u < len(units) else NULL


def extract_parser_features(
    sentences: Iterable[Sentence],
    targets: set[str],
    relations: Sequence[str] = DEFAULT_RELATIONS,
) -> Counter:
    """Dependency features: narrow POS/word windows, coordination partners,
    and per-relation head/modifier slots."""
    events: Counter = Counter()
    if not targets:
        return events
    rel_set = set(relations)
    for sent in sentences:
        toks = sent.tokens
        deps = sent.deps or frozenset()
        for rel, _, _ in deps:
            if rel not in rel_set:
                raise CorpusError("relation %r outside the declared inventory" % rel)
        for i, tok in enumerate(toks):
            if tok.lemma not in targets:
                continue
            occ: set[tuple[str, str]] = set()
            pos1 = i + 1  # dependency tuples are 1-based
            for p in _PARSER_POS_POSITIONS:
                occ.add(("pos[%d]" % p, _pos_at(toks, i + p)))
            for p in _PARSER_WORD_POSITIONS:
                occ.add(("word[%d]" % p, _lemma_at(toks, i + p)))
            for rel, head, dep in deps:
                if rel == COORD_RELATION and pos1 in (head, dep):
                    partner = toks[dep - 1] if pos1 == head else toks[head - 1]
                    occ.add(("conj_word", partner.lemma))
                    occ.add(("conj_pos", partner.pos))
                if dep == pos1:
                    occ.add(("head[%s]" % rel, toks[head - 1].lemma))
                if head == pos1:
                    occ.add(("mod[%s]" % rel, toks[dep - 1].lemma))
            _emit(events, occ, tok.lemma)
    return events


def count_occurrences(
    sentences: Iterable[Sentence], targets: set[str]
) -> Counter:
    """Token occurrence counts of the target lemmas."""
    counts: Counter = Counter()
    for sent in sentences:
        for tok in sent.tokens:
            if tok.lemma in targets:
                counts[tok.lemma] += 1
    return counts
