"""Stratified cross-validation and type/token evaluation.

Type precision/recall/F-score compare hypothesised lexical entries against
the gold lexicon.  Token accuracy is the share of gold token mass (from a
treebank frequency table) covered by correct hypothesised entries: an entry
unattested in the treebank earns no credit, and the denominator is the
total frequency of the gold entries under evaluation.

Treebank frequency file: ``lexeme<TAB>lexical_type<TAB>count``.
Report files: a JSON array of row objects (keys: method, word_class, fold,
precision, recall, fscore, token_accuracy, n_hypothesised, n_gold) plus an
aligned plain-text table.
"""

from __future__ import annotations

import json
import random
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Mapping, Protocol

from .lexicon import (
    LexicalEntry,
    LexicalType,
    SeedLexicon,
    WordClass,
    CLASS_ORDER,
)


class EvaluationError(ValueError):
    """Invalid evaluation input."""


@dataclass(frozen=True)
class FoldAssignment:
    n_folds: int
    fold_of: Mapping[str, int]

    def members(self, fold: int) -> list[str]:
        return sorted(l for l, f in self.fold_of.items() if f == fold)


def stratified_folds(
    lexicon: SeedLexicon, n: int = 10, seed: int = 0
) -> FoldAssignment:
    """Assign lexemes to folds, spreading each lexical type's positives as
    evenly as fold-size balance allows.

    Types are processed rarest first; each type's unassigned lexemes are
    shuffled by the seed and placed one at a time into the least-loaded fold
    with the fewest positives of that type.  Fold sizes never differ by more
    than one lexeme.
    """
    if n < 2:
        raise EvaluationError("need at least 2 folds")
    lexemes = lexicon.lexemes
    if len(lexemes) < n:
        raise EvaluationError("fewer lexemes than folds")
    rng = random.Random(seed)
    by_type: dict[LexicalType, list[str]] = defaultdict(list)
    for lexeme in lexemes:
        for entry in sorted(lexicon.entries_of(lexeme), key=lambda e: e.ltype.name):
            by_type[entry.ltype].append(lexeme)
    fold_of: dict[str, int] = {}
    load = [0] * n
    type_count: dict[LexicalType, list[int]] = defaultdict(lambda: [0] * n)
    for ltype in sorted(lexicon.inventory, key=lambda t: (lexicon.count(t), t.name)):
        fresh = [l for l in by_type[ltype] if l not in fold_of]
        rng.shuffle(fresh)
        for lexeme in fresh:
            min_load = min(load)
            fold = min(
                (f for f in range(n) if load[f] == min_load),
                key=lambda f: (type_count[ltype][f], f),
            )
            fold_of[lexeme] = fold
            load[fold] += 1
            for entry in lexicon.entries_of(lexeme):
                type_count[entry.ltype][fold] += 1
    return FoldAssignment(n, fold_of)


def type_prf(
    hypothesised: set[LexicalEntry], gold: set[LexicalEntry]
) -> tuple[float, float, float]:
    """Precision, recall and F-score of hypothesised entries against gold.

    An empty hypothesis (or gold) set scores precision (recall) 1.0; the
    F-score is 0 when precision and recall are both 0.
    """
    correct = len(hypothesised & gold)
    precision = correct / len(hypothesised) if hypothesised else 1.0
    recall = correct / len(gold) if gold else 1.0
    fscore = (
        2 * precision * recall / (precision + recall) if precision + recall else 0.0
    )
    return precision, recall, fscore


@dataclass(frozen=True)
class TreebankFreqs:
    """Token counts of gold lexical entries in a treebank."""

    counts: Mapping[LexicalEntry, int]


def load_treebank_freqs(
    source: Iterable[str], lexicon: SeedLexicon
) -> TreebankFreqs:
    by_name = {t.name: t for t in lexicon.inventory}
    counts: dict[LexicalEntry, int] = {}
    for lineno, raw in enumerate(source, start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise EvaluationError("line %d: expected 3 fields" % lineno)
        lexeme, type_name, count_s = fields
        count = int(count_s)
        if count < 0:
            raise EvaluationError("line %d: negative count" % lineno)
        ltype = by_name.get(type_name)
        if ltype is None:
            raise EvaluationError(
                "line %d: lexical type %r not in the gold inventory" % (lineno, type_name)
            )
        entry = LexicalEntry(lexeme.lower(), ltype)
        if entry not in lexicon.entries:
            raise EvaluationError(
                "line %d: entry %s/%s not in the gold lexicon"
                % (lineno, lexeme, type_name)
            )
        counts[entry] = counts.get(entry, 0) + count
    return TreebankFreqs(counts)


def token_accuracy(
    hypothesised: set[LexicalEntry],
    gold: set[LexicalEntry],
    freqs: TreebankFreqs,
) -> float:
    """Share of the gold entries' token mass covered by correct hypotheses."""
    denominator = sum(c for e, c in freqs.counts.items() if e in gold)
    if denominator == 0:
        raise EvaluationError("zero total gold token frequency")
    numerator = sum(
        c for e, c in freqs.counts.items() if e in gold and e in hypothesised
    )
    return numerator / denominator


class Method(Protocol):
    """An acquisition method: fit on a training lexicon, then predict
    entries for a lexeme given its pre-identified word classes."""

    name: str

    def fit(
        self, train: SeedLexicon
    ) -> Callable[[str, frozenset[WordClass]], set[LexicalEntry]]: ...


@dataclass(frozen=True)
class ReportRow:
    method: str
    word_class: str
    fold: str
    precision: float
    recall: float
    fscore: float
    token_accuracy: float | None
    n_hypothesised: float
    n_gold: float


@dataclass(frozen=True)
class EvaluationReport:
    rows: tuple[ReportRow, ...]

    def to_json(self) -> str:
        payload = {
            "token_accuracy_definition": (
                "share of gold token mass covered by correct hypothesised entries;"
                " entries unattested in the treebank earn no credit"
            ),
            "rows": [asdict(row) for row in self.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        header = (
            "method",
            "class",
            "fold",
            "prec",
            "rec",
            "fscore",
            "tok_acc",
            "n_hyp",
            "n_gold",
        )
        body = [
            (
                row.method,
                row.word_class,
                row.fold,
                "%.4f" % row.precision,
                "%.4f" % row.recall,
                "%.4f" % row.fscore,
                "-" if row.token_accuracy is None else "%.4f" % row.token_accuracy,
                "%g" % row.n_hypothesised,
                "%g" % row.n_gold,
            )
            for row in self.rows
        ]
        widths = [
            max(len(header[i]), *(len(line[i]) for line in body)) if body else len(header[i])
            for i in range(len(header))
        ]
        fmt = "  ".join("%%-%ds" % w for w in widths)
        lines = [fmt % header] + [fmt % line for line in body]
        note = "# token accuracy = correct share of gold token mass (no credit for unattested entries)"
        return note + "\n" + "\n".join(lines) + "\n"


def _score_fold(
    method_name: str,
    fold: str,
    hypothesised: set[LexicalEntry],
    gold: set[LexicalEntry],
    freqs: TreebankFreqs | None,
    word_classes: tuple[WordClass, ...],
) -> list[ReportRow]:
    rows = []
    slices: list[tuple[str, set, set]] = [("all", hypothesised, gold)]
    for wc in word_classes:
        slices.append(
            (
                wc.value,
                {e for e in hypothesised if e.word_class == wc},
                {e for e in gold if e.word_class == wc},
            )
        )
    for label, hyp_slice, gold_slice in slices:
        precision, recall, fscore = type_prf(hyp_slice, gold_slice)
        accuracy: float | None = None
        if freqs is not None:
            try:
                accuracy = token_accuracy(hyp_slice, gold_slice, freqs)
            except EvaluationError:
                accuracy = None
        rows.append(
            ReportRow(
                method_name,
                label,
                fold,
                precision,
                recall,
                fscore,
                accuracy,
                float(len(hyp_slice)),
                float(len(gold_slice)),
            )
        )
    return rows


def _run_fold(args) -> list[ReportRow]:
    method, lexicon, freqs, word_classes, fold_index, test_lexemes = args
    train_lexemes = [l for l in lexicon.lexemes if l not in set(test_lexemes)]
    predictor = method.fit(lexicon.restrict(train_lexemes))
    hypothesised: set[LexicalEntry] = set()
    gold: set[LexicalEntry] = set()
    for lexeme in test_lexemes:
        hypothesised |= predictor(lexeme, lexicon.classes_of(lexeme))
        gold |= lexicon.entries_of(lexeme)
    return _score_fold(
        method.name, str(fold_index), hypothesised, gold, freqs, word_classes
    )


def cross_validate(
    method: Method,
    lexicon: SeedLexicon,
    freqs: TreebankFreqs | None = None,
    n: int = 10,
    seed: int = 0,
    jobs: int = 1,
) -> EvaluationReport:
    """Stratified n-fold evaluation of an acquisition method.

    Each fold trains on the out-of-fold lexemes and predicts entries for the
    in-fold lexemes using their gold word classes as pre-identification.
    Rows are reported per word class and overall, per fold and as fold means.
    """
    folds = stratified_folds(lexicon, n, seed)
    word_classes = tuple(
        wc for wc in CLASS_ORDER if any(t.word_class == wc for t in lexicon.inventory)
    )
    tasks = [
        (method, lexicon, freqs, word_classes, fold, folds.members(fold))
        for fold in range(n)
    ]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            per_fold = list(pool.map(_run_fold, tasks))
    else:
        per_fold = [_run_fold(task) for task in tasks]

    rows: list[ReportRow] = [row for fold_rows in per_fold for row in fold_rows]
    mean_rows: list[ReportRow] = []
    for label in ["all"] + [wc.value for wc in word_classes]:
        group = [r for r in rows if r.word_class == label]
        accuracies = [r.token_accuracy for r in group if r.token_accuracy is not None]
        mean_rows.append(
            ReportRow(
                method.name,
                label,
                "mean",
                sum(r.precision for r in group) / len(group),
                sum(r.recall for r in group) / len(group),
                sum(r.fscore for r in group) / len(group),
                sum(accuracies) / len(accuracies) if accuracies else None,
                sum(r.n_hypothesised for r in group) / len(group),
                sum(r.n_gold for r in group) / len(group),
            )
        )
    return EvaluationReport(tuple(rows + mean_rows))
