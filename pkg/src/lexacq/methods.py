"""Acquisition method pipelines: turn resources into feature spaces and
vectors, and expose a uniform fit/predict handle for evaluation.

Feature spaces are built once from the unlabeled resource (word list,
cluster lexicon or corpus) over the full lexeme set; only the gold labels
are split during cross-validation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

from . import knn, morph, ontology, syntax
from .featurespace import (
    FeatureSpace,
    SparseVector,
    empty_vector,
    select_instances,
    vectorize,
)
from .lexicon import (
    LexicalEntry,
    LexicalType,
    SeedLexicon,
    WordClass,
    majority_default,
)

METHOD_NAMES = (
    "ngram",
    "deriv",
    "syntax-tagged",
    "syntax-chunked",
    "syntax-parsed",
    "ontology",
    "baseline",
)

#: Methods that extract a feature matrix and train the classifier suite.
FEATURE_METHODS = ("ngram", "deriv", "syntax-tagged", "syntax-chunked", "syntax-parsed")


def _class_defaults(train: SeedLexicon) -> dict[WordClass, LexicalType]:
    present = {t.word_class for t in train.inventory}
    return {wc: majority_default(wc, train) for wc in present}


@dataclass
class BaselineMethod:
    """Majority-class defaults only."""

    name: str = "baseline"

    def fit(self, train: SeedLexicon) -> Callable:
        defaults = _class_defaults(train)

        def predict(lexeme: str, classes) -> set[LexicalEntry]:
            return {LexicalEntry(lexeme, defaults[wc]) for wc in classes}

        return predict


@dataclass
class KnnMethod:
    """Feature-vector method backed by the binary classifier suite."""

    name: str
    space: FeatureSpace
    vectors: dict[str, SparseVector]
    inventory: frozenset[LexicalType]
    k: int = 9
    top_n: int = 100

    def vector_of(self, lexeme: str) -> SparseVector:
        return self.vectors.get(lexeme) or empty_vector(lexeme)

    def fit(self, train: SeedLexicon) -> Callable:
        train_vectors = {l: self.vector_of(l) for l in train.lexemes}
        suite = knn.train(
            train_vectors,
            train,
            self.inventory,
            n_features=self.top_n,
            n_columns=self.space.n_columns,
        )

        def predict(lexeme: str, classes) -> set[LexicalEntry]:
            return knn.predict_entries(
                suite, lexeme, self.vector_of(lexeme), set(classes), k=self.k
            )

        return predict


@dataclass
class OntologyMethod:
    """Semantic-neighbour voting over an ontology."""

    onto: ontology.Ontology
    name: str = "ontology"

    def fit(self, train: SeedLexicon) -> Callable:
        defaults = _class_defaults(train)

        def predict(lexeme: str, classes) -> set[LexicalEntry]:
            return ontology.vote_entries(
                self.onto, lexeme, set(classes), train, defaults
            )

        return predict


# ---------------------------------------------------------------------------
# Pipeline builders

def ngram_pipeline(
    lexicon: SeedLexicon,
    word_list: list[str] | None = None,
    min_freq: int = 3,
    total_cap: int = 3900,
    n_min: int = 1,
    n_max: int = 6,
    sentinels: bool = False,
) -> tuple[FeatureSpace, dict[str, SparseVector]]:
    """N-gram space over the word list (the lexicon's lexemes by default)
    and presence vectors for every lexicon lexeme."""
    words = list(word_list) if word_list else list(lexicon.lexemes)
    space = morph.build_ngram_space(
        words, min_freq=min_freq, cap=total_cap, n_min=n_min, n_max=n_max,
        sentinels=sentinels,
    )
    events: Counter = Counter()
    for lexeme in lexicon.lexemes:
        for gram in char_set(lexeme, n_min, n_max, sentinels):
            events[syntax.FeatureEvent(lexeme, "ngram", gram)] = 1
    occurrences = {lexeme: 1 for lexeme in lexicon.lexemes}
    return space, vectorize(events, space, occurrences)


def char_set(lexeme: str, n_min: int, n_max: int, sentinels: bool) -> set[str]:
    """Distinct n-grams of a lexeme; one word-list entry counts as a single
    occurrence, so vector values are presence flags."""
    return set(morph.char_ngrams(lexeme, n_min, n_max, sentinels))


def deriv_pipeline(
    lexicon: SeedLexicon,
    clusters: morph.ClusterLexicon,
    min_freq: int = 3,
    total_cap: int = 3900,
) -> tuple[FeatureSpace, dict[str, SparseVector]]:
    """Transformation space from the cluster lexicon and presence vectors."""
    per_lexeme = {
        lexeme: morph.derivational_features(
            lexeme, clusters, set(lexicon.classes_of(lexeme))
        )
        for lexeme in lexicon.lexemes
    }
    space = morph.build_transformation_space(
        per_lexeme, min_freq=min_freq, cap=total_cap
    )
    events: Counter = Counter()
    for lexeme, transformations in per_lexeme.items():
        for transformation in transformations:
            events[syntax.FeatureEvent(lexeme, "deriv", transformation.render())] = 1
    occurrences = {lexeme: 1 for lexeme in lexicon.lexemes}
    return space, vectorize(events, space, occurrences)


def syntax_pipeline(
    lexicon: SeedLexicon,
    sentences: list[syntax.Sentence],
    level: str,
    relations: tuple[str, ...] | None = None,
    per_type_cap: int = 50,
    total_cap: int = 3900,
) -> tuple[FeatureSpace, dict[str, SparseVector]]:
    """Extract level-specific events from a preprocessed corpus and build
    the capped space plus per-occurrence vectors."""
    targets = set(lexicon.lexemes)
    if level == "tagged":
        events = syntax.extract_tagger_features(sentences, targets)
    elif level == "chunked":
        events = syntax.extract_chunker_features(sentences, targets)
    elif level == "parsed":
        events = syntax.extract_parser_features(
            sentences, targets, relations or syntax.DEFAULT_RELATIONS
        )
    else:
        raise ValueError("unknown corpus level %r" % level)
    occurrences = syntax.count_occurrences(sentences, targets)
    space = select_instances(events, targets, per_type_cap, total_cap)
    return space, vectorize(events, space, dict(occurrences))
