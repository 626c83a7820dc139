"""Ontology-driven acquisition: per-sense neighbour voting with union
across senses.

Synset file: ``synset_id<TAB>word_class<TAB>lemma1 lemma2 ...``
Edge file:   ``child_id<TAB>parent_id`` (direct hypernym edges)
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable

from .lexicon import (
    LexicalEntry,
    LexicalType,
    SeedLexicon,
    WordClass,
)


class OntologyError(ValueError):
    """Malformed or inconsistent ontology input."""


@dataclass(frozen=True)
class Synset:
    sid: str
    word_class: WordClass
    members: tuple[str, ...]


@dataclass(frozen=True)
class NeighbourSet:
    sense: str
    neighbours: frozenset[str]


class Ontology:
    """Synsets with direct hypernym edges and a lemma sense index."""

    def __init__(self, synsets: Iterable[Synset], edges: Iterable[tuple[str, str]]):
        self.synsets: dict[str, Synset] = {}
        for synset in synsets:
            if synset.sid in self.synsets:
                raise OntologyError("duplicate synset id %r" % synset.sid)
            self.synsets[synset.sid] = synset
        self.edges = frozenset(edges)
        parents: dict[str, set[str]] = defaultdict(set)
        children: dict[str, set[str]] = defaultdict(set)
        for child, parent in self.edges:
            if child not in self.synsets or parent not in self.synsets:
                raise OntologyError("edge %r -> %r references unknown synset" % (child, parent))
            if child == parent:
                raise OntologyError("self-loop on synset %r" % child)
            if self.synsets[child].word_class != self.synsets[parent].word_class:
                raise OntologyError("edge %r -> %r crosses word classes" % (child, parent))
            parents[child].add(parent)
            children[parent].add(child)
        self._parents = {sid: tuple(sorted(ps)) for sid, ps in parents.items()}
        self._children = {sid: tuple(sorted(cs)) for sid, cs in children.items()}
        sense_index: dict[tuple[str, WordClass], list[str]] = defaultdict(list)
        for synset in self.synsets.values():
            for lemma in synset.members:
                key = (lemma, synset.word_class)
                if synset.sid not in sense_index[key]:
                    sense_index[key].append(synset.sid)
        self._sense_index = {k: tuple(v) for k, v in sense_index.items()}

    def senses(self, lemma: str, word_class: WordClass) -> tuple[str, ...]:
        return self._sense_index.get((lemma, word_class), ())

    def hypernyms(self, sid: str) -> tuple[str, ...]:
        return self._parents.get(sid, ())

    def hyponyms(self, sid: str) -> tuple[str, ...]:
        return self._children.get(sid, ())


def load_ontology(
    synset_source: Iterable[str], edge_source: Iterable[str]
) -> Ontology:
    synsets = []
    for lineno, raw in enumerate(synset_source, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise OntologyError("synset line %d: expected 3 fields" % lineno)
        sid, tag, members = fields
        lemmas = tuple(members.split())
        if not lemmas:
            raise OntologyError("synset line %d: no members" % lineno)
        synsets.append(Synset(sid, WordClass.from_tag(tag), lemmas))
    edges = []
    for lineno, raw in enumerate(edge_source, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise OntologyError("edge line %d: expected 2 fields" % lineno)
        edges.append((fields[0], fields[1]))
    return Ontology(synsets, edges)


def semantic_neighbours(onto: Ontology, sense: str, target: str) -> NeighbourSet:
    """Synonyms plus members of direct hypernym and hyponym synsets,
    excluding the target lemma itself."""
    if sense not in onto.synsets:
        raise OntologyError("unknown sense %r" % sense)
    lemmas: set[str] = set(onto.synsets[sense].members)
    for sid in onto.hypernyms(sense):
        lemmas.update(onto.synsets[sid].members)
    for sid in onto.hyponyms(sense):
        lemmas.update(onto.synsets[sid].members)
    lemmas.discard(target)
    return NeighbourSet(sense, frozenset(lemmas))


def vote_entries(
    onto: Ontology,
    lexeme: str,
    classes: set[WordClass],
    train: SeedLexicon,
    defaults: dict[WordClass, LexicalType],
) -> set[LexicalEntry]:
    """Per-sense majority vote over the neighbours' gold lexical types,
    unioned across senses and word classes.

    Each sense votes for the most frequent type among its neighbours' gold
    types of the class (ties: higher type frequency in the training lexicon,
    then lexicographic).  A class whose senses produce no vote at all falls
    back to the class default.
    """
    if not classes:
        raise OntologyError("classes must be non-empty")
    entries: set[LexicalEntry] = set()
    for wc in sorted(classes, key=lambda c: c.value):
        voted: set[LexicalType] = set()
        for sense in onto.senses(lexeme, wc):
            tally: Counter = Counter()
            for neighbour in semantic_neighbours(onto, sense, lexeme).neighbours:
                for entry in train.entries_of(neighbour):
                    if entry.word_class == wc:
                        tally[entry.ltype] += 1
            if tally:
                winner = min(
                    tally,
                    key=lambda t: (-tally[t], -train.count(t), t.name),
                )
                voted.add(winner)
        if voted:
            entries.update(LexicalEntry(lexeme, t) for t in voted)
        else:
            default = defaults.get(wc)
            if default is None:
                raise OntologyError(
                    "no default lexical type for word class %s" % wc.value
                )
            entries.add(LexicalEntry(lexeme, default))
    return entries
