"""Instance-based binary classification and the per-type classifier suite.

Each lexical type gets one binary k-NN classifier over the top-N value
columns ranked by gain ratio.  Distances are weighted L1 over per-column
min-max-scaled values; the k nearest instances vote (all instances tied at
the k-th distance included) and exact vote ties resolve to negative.  Types
whose training labels are single-class become degenerate classifiers that
always predict negative; lexemes left without any positive classification
fall back to the majority-class lexical type of each pre-identified word
class.

Model file: line-based dump of selected columns, weights and instances;
floats are serialised with ``repr`` so reloading reproduces bit-identical
predictions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping

import numpy as np

from . import kernels
from .featurespace import SparseVector, rank_features, take_top
from .lexicon import (
    LexicalEntry,
    LexicalType,
    SeedLexicon,
    WordClass,
    majority_default,
)


class KnnError(ValueError):
    """Invalid classifier construction or query."""


def _scale(values: np.ndarray, lower: np.ndarray, span: np.ndarray) -> np.ndarray:
    # Columns constant across the instance base carry no distance; their
    # scaled value is defined as 0 everywhere.
    out = np.zeros_like(values, dtype=np.float64)
    np.divide(values - lower, span, out=out, where=span > 0)
    return out


@dataclass
class InstanceBase:
    """Stored training instances restricted to the selected value columns."""

    columns: tuple[int, ...]
    weights: np.ndarray
    matrix: np.ndarray
    labels: np.ndarray
    lexemes: tuple[str, ...]
    lower: np.ndarray = field(init=False, repr=False)
    span: np.ndarray = field(init=False, repr=False)
    scaled: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.matrix.shape != (len(self.lexemes), len(self.columns)):
            raise KnnError("instance matrix shape mismatch")
        if len(self.labels) != len(self.lexemes):
            raise KnnError("label count mismatch")
        if self.matrix.shape[0] == 0:
            raise KnnError("empty instance base")
        self.weights = np.ascontiguousarray(self.weights, dtype=np.float64)
        self.matrix = np.ascontiguousarray(self.matrix, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=bool)
        if self.matrix.shape[1]:
            self.lower = self.matrix.min(axis=0)
            self.span = self.matrix.max(axis=0) - self.lower
        else:
            self.lower = np.zeros(0)
            self.span = np.zeros(0)
        self.scaled = np.ascontiguousarray(_scale(self.matrix, self.lower, self.span))

    def restrict_query(self, query: SparseVector) -> np.ndarray:
        values = np.array(
            [query.column_value(c) for c in self.columns], dtype=np.float64
        )
        return _scale(values, self.lower, self.span)


@dataclass
class ClassifierSuite:
    """One binary classifier per lexical type (None marks a degenerate
    always-negative classifier) plus per-class majority defaults."""

    classifiers: dict[LexicalType, InstanceBase | None]
    defaults: dict[WordClass, LexicalType]


def classify(base: InstanceBase, query: SparseVector, k: int = 9) -> tuple[bool, float]:
    """Vote of the k nearest stored instances.

    Returns ``(label, positive-vote fraction)``; ties at the k-th distance
    widen the electorate, and an exactly split vote yields a negative label.
    """
    if k < 1:
        raise KnnError("k must be >= 1")
    n = len(base.labels)
    q_scaled = base.restrict_query(query)
    distances = np.empty(n, dtype=np.float64)
    kernels.weighted_l1_distances(base.scaled, base.weights, q_scaled, distances)
    kk = min(k, n)
    kth = np.partition(distances, kk - 1)[kk - 1]
    voters = distances <= kth
    total = int(voters.sum())
    positive = int(base.labels[voters].sum())
    return 2 * positive > total, positive / total


def train(
    vectors: Mapping[str, SparseVector],
    lexicon: SeedLexicon,
    inventory: Iterable[LexicalType],
    n_features: int = 100,
    n_columns: int | None = None,
) -> ClassifierSuite:
    """Train one binary classifier per lexical type in the inventory.

    Labels come from the lexicon's entries; features are the top
    ``n_features`` value columns per type, weighted by their gain-ratio
    scores.
    """
    inventory = set(inventory)
    if not inventory:
        raise KnnError("empty lexical type inventory")
    lexemes = sorted(vectors)
    if not lexemes:
        raise KnnError("empty training set")
    for lexeme in lexemes:
        if not lexicon.entries_of(lexeme):
            raise KnnError("training lexeme %r has no gold entry" % lexeme)
    vector_list = [vectors[lexeme] for lexeme in lexemes]

    classifiers: dict[LexicalType, InstanceBase | None] = {}
    for ltype in sorted(inventory, key=lambda t: t.name):
        labels = {
            lexeme: any(e.ltype == ltype for e in lexicon.entries_of(lexeme))
            for lexeme in lexemes
        }
        try:
            ranking = rank_features(vector_list, labels, n_columns=n_columns)
        except ValueError:
            classifiers[ltype] = None
            continue
        selected = sorted(take_top(ranking, n_features))
        column_index = {c: j for j, c in enumerate(selected)}
        matrix = np.zeros((len(vector_list), len(selected)), dtype=np.float64)
        for i, vec in enumerate(vector_list):
            for iid, (raw, rel) in vec.values.items():
                j = column_index.get(2 * iid)
                if j is not None:
                    matrix[i, j] = float(raw)
                j = column_index.get(2 * iid + 1)
                if j is not None:
                    matrix[i, j] = rel
        classifiers[ltype] = InstanceBase(
            columns=tuple(selected),
            weights=np.array([ranking.scores[c] for c in selected]),
            matrix=matrix,
            labels=np.array([labels[lexeme] for lexeme in lexemes]),
            lexemes=tuple(lexemes),
        )
    defaults = {
        wc: majority_default(wc, lexicon)
        for wc in {t.word_class for t in lexicon.inventory}
    }
    return ClassifierSuite(classifiers, defaults)


def predict_entries(
    suite: ClassifierSuite,
    lexeme: str,
    vector: SparseVector,
    classes: set[WordClass],
    k: int = 9,
) -> set[LexicalEntry]:
    """Entries from all positive classifiers of the pre-identified word
    classes, with the majority default filling any class left empty."""
    if not classes:
        raise KnnError("classes must be non-empty")
    entries: set[LexicalEntry] = set()
    for ltype in sorted(suite.classifiers, key=lambda t: t.name):
        if ltype.word_class not in classes:
            continue
        base = suite.classifiers[ltype]
        if base is None:
            continue
        label, _ = classify(base, vector, k)
        if label:
            entries.add(LexicalEntry(lexeme, ltype))
    for wc in sorted(classes, key=lambda c: c.value):
        if not any(e.word_class == wc for e in entries):
            default = suite.defaults.get(wc)
            if default is None:
                raise KnnError(
                    "no default lexical type for word class %s" % wc.value
                )
            entries.add(LexicalEntry(lexeme, default))
    return entries


# ---------------------------------------------------------------------------
# Model file IO

def _floats(values: Iterable[float]) -> str:
    return " ".join(repr(float(v)) for v in values)


def save_suite(
    suite: ClassifierSuite, fh: IO[str], space_hash: str = "", k: int = 9
) -> None:
    fh.write("#LEXACQ-MODEL\t1\n")
    fh.write("#SPACEHASH\t%s\n" % space_hash)
    fh.write("#K\t%d\n" % k)
    for wc in sorted(suite.defaults, key=lambda c: c.value):
        fh.write("#DEFAULT\t%s\t%s\n" % (wc.value, suite.defaults[wc].name))
    for ltype in sorted(suite.classifiers, key=lambda t: t.name):
        base = suite.classifiers[ltype]
        kind = "degenerate" if base is None else "knn"
        fh.write(
            "#CLASSIFIER\t%s\t%s\t%s\n" % (ltype.name, ltype.word_class.value, kind)
        )
        if base is None:
            continue
        fh.write("#COLS\t%s\n" % " ".join(str(c) for c in base.columns))
        fh.write("#WEIGHTS\t%s\n" % _floats(base.weights))
        for lexeme, label, row in zip(base.lexemes, base.labels, base.matrix):
            fh.write(
                "#INSTANCE\t%s\t%d\t%s\n" % (lexeme, int(label), _floats(row))
            )


def load_suite(source: Iterable[str]) -> tuple[ClassifierSuite, str, int]:
    """Parse a model file; returns (suite, feature-space hash, k)."""
    lines = iter(source)
    header = next(lines, "")
    if not header.startswith("#LEXACQ-MODEL\t1"):
        raise KnnError("not a model file (bad header)")
    space_hash = ""
    k = 9
    defaults: dict[WordClass, LexicalType] = {}
    classifiers: dict[LexicalType, InstanceBase | None] = {}
    current: dict | None = None

    def finish(entry):
        if entry is None or entry["kind"] == "degenerate":
            return
        ltype = entry["ltype"]
        classifiers[ltype] = InstanceBase(
            columns=tuple(entry["columns"]),
            weights=np.array(entry["weights"], dtype=np.float64),
            matrix=np.array(entry["rows"], dtype=np.float64),
            labels=np.array(entry["labels"], dtype=bool),
            lexemes=tuple(entry["lexemes"]),
        )

    for raw in lines:
        line = raw.rstrip("\n")
        if not line:
            continue
        tag, _, rest = line.partition("\t")
        if tag == "#SPACEHASH":
            space_hash = rest
        elif tag == "#K":
            k = int(rest)
        elif tag == "#DEFAULT":
            wc_tag, name = rest.split("\t")
            wc = WordClass.from_tag(wc_tag)
            defaults[wc] = LexicalType(name, wc)
        elif tag == "#CLASSIFIER":
            finish(current)
            name, wc_tag, kind = rest.split("\t")
            ltype = LexicalType(name, WordClass.from_tag(wc_tag))
            if kind == "degenerate":
                classifiers[ltype] = None
                current = {"ltype": ltype, "kind": kind}
            else:
                current = {
                    "ltype": ltype,
                    "kind": kind,
                    "columns": [],
                    "weights": [],
                    "rows": [],
                    "labels": [],
                    "lexemes": [],
                }
        elif tag == "#COLS":
            current["columns"] = [int(c) for c in rest.split()] if rest else []
        elif tag == "#WEIGHTS":
            current["weights"] = [float(w) for w in rest.split()] if rest else []
        elif tag == "#INSTANCE":
            lexeme, label, values = rest.split("\t")
            current["lexemes"].append(lexeme)
            current["labels"].append(bool(int(label)))
            current["rows"].append([float(v) for v in values.split()] if values else [])
        else:
            raise KnnError("unrecognised model line: %r" % line)
    finish(current)
    return ClassifierSuite(classifiers, defaults), space_hash, k
