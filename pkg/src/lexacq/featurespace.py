"""Capped feature spaces, per-lexeme sparse vectors and feature ranking.

A feature space is an ordered list of (feature type, instance) pairs with
dense integer ids.  Every instance contributes two value columns to the
vector space: column ``2*id`` holds the raw count and column ``2*id + 1``
the relative occurrence over the lexeme's token instances.  Rankings and
classifier feature selection operate on these value columns.

Matrix file format: header lines ``#FEATURE id<TAB>ftype<TAB>instance``
(plus ``#CAPS`` and ``#OCC`` bookkeeping lines), then one data line per
lexeme: ``lexeme<TAB>id:raw:rel ...`` ordered by feature id.
"""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .syntax import FeatureEvent

RAW, REL = 0, 1


class FeatureSpaceError(ValueError):
    """Inconsistent feature-space input or caps."""


@dataclass(frozen=True)
class FeatureSpace:
    """Selected feature instances with stable dense ids."""

    instances: tuple[tuple[str, str], ...]
    per_type_cap: int = 50
    total_cap: int = 3900
    _id_of: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        per_type = defaultdict(int)
        for ftype, _ in self.instances:
            per_type[ftype] += 1
        if len(self.instances) > self.total_cap:
            raise FeatureSpaceError("feature space exceeds total cap")
        if per_type and max(per_type.values()) > self.per_type_cap:
            raise FeatureSpaceError("feature space exceeds per-type cap")
        if len(set(self.instances)) != len(self.instances):
            raise FeatureSpaceError("duplicate feature instances")
        object.__setattr__(
            self, "_id_of", {inst: i for i, inst in enumerate(self.instances)}
        )

    def __len__(self) -> int:
        return len(self.instances)

    @property
    def n_columns(self) -> int:
        """Two value columns (raw, rel) per feature instance."""
        return 2 * len(self.instances)

    def id_of(self, ftype: str, instance: str) -> int | None:
        return self._id_of.get((ftype, instance))

    def header_lines(self) -> list[str]:
        return [
            "#FEATURE\t%d\t%s\t%s" % (i, ftype, instance)
            for i, (ftype, instance) in enumerate(self.instances)
        ]

    def content_hash(self) -> str:
        return hashlib.sha256(
            "\n".join(self.header_lines()).encode("utf-8")
        ).hexdigest()


@dataclass(frozen=True)
class SparseVector:
    """Per-lexeme signature: feature id -> (raw count, relative occurrence)."""

    lexeme: str
    values: Mapping[int, tuple[int, float]]
    occurrences: int

    def column_value(self, column: int) -> float:
        raw, rel = self.values.get(column // 2, (0, 0.0))
        return float(raw) if column % 2 == RAW else rel

    def nonzero_columns(self) -> list[int]:
        cols = []
        for iid, (raw, rel) in self.values.items():
            if raw:
                cols.append(2 * iid)
            if rel:
                cols.append(2 * iid + 1)
        return cols


def empty_vector(lexeme: str) -> SparseVector:
    return SparseVector(lexeme, {}, 0)


@dataclass(frozen=True)
class FeatureRanking:
    """Value columns ordered best-first with their gain-ratio scores."""

    order: tuple[int, ...]
    scores: Mapping[int, float]


def rank_instances_by_saturation(
    stats: Mapping, n_lexemes: int, cap: int
) -> list:
    """Order instance keys by saturation (share of lexemes holding the
    instance), breaking ties by higher total frequency then key, and keep
    the top ``cap``.

    ``stats`` maps key -> (total frequency, set of holding lexemes).
    """
    if n_lexemes <= 0:
        return []
    ordered = sorted(
        stats,
        key=lambda k: (-len(stats[k][1]) / n_lexemes, -stats[k][0], k),
    )
    return ordered[:cap]


def select_instances(
    events: Mapping[FeatureEvent, int],
    lexicon_lexemes: set[str],
    per_type_cap: int = 50,
    total_cap: int = 3900,
) -> FeatureSpace:
    """Select feature instances by saturation across the lexicon.

    Per feature type the ``per_type_cap`` instances of highest saturation
    survive (ties: higher total count, then lexicographic); the union is then
    truncated to ``total_cap`` by the same ordering.  Events of lexemes
    outside ``lexicon_lexemes`` are ignored.
    """
    if per_type_cap < 1 or total_cap < 1:
        raise FeatureSpaceError("caps must be >= 1")
    stats: dict[tuple[str, str], tuple[int, set]] = {}
    for event, count in events.items():
        if count <= 0 or event.lexeme not in lexicon_lexemes:
            continue
        key = (event.ftype, event.instance)
        freq, holders = stats.setdefault(key, (0, set()))
        holders.add(event.lexeme)
        stats[key] = (freq + count, holders)
    n = len(lexicon_lexemes)

    by_type: dict[str, dict] = defaultdict(dict)
    for key, stat in stats.items():
        by_type[key[0]][key] = stat
    survivors: dict[tuple[str, str], tuple[int, set]] = {}
    for ftype in by_type:
        for key in rank_instances_by_saturation(by_type[ftype], n, per_type_cap):
            survivors[key] = stats[key]
    chosen = rank_instances_by_saturation(survivors, n, total_cap)
    return FeatureSpace(tuple(chosen), per_type_cap, total_cap)


def vectorize(
    events: Mapping[FeatureEvent, int],
    space: FeatureSpace,
    occurrences: Mapping[str, int],
) -> dict[str, SparseVector]:
    """Build sparse vectors from an event multiset.

    Instances outside the space are dropped.  Every lexeme in ``occurrences``
    receives a vector (possibly empty); a lexeme with events but no positive
    occurrence count is an error.
    """
    raw_counts: dict[str, dict[int, int]] = defaultdict(dict)
    for event, count in events.items():
        if count <= 0:
            continue
        occ = occurrences.get(event.lexeme, 0)
        if occ <= 0:
            raise FeatureSpaceError(
                "lexeme %r has events but no recorded occurrences" % event.lexeme
            )
        iid = space.id_of(event.ftype, event.instance)
        if iid is None:
            continue
        raw_counts[event.lexeme][iid] = raw_counts[event.lexeme].get(iid, 0) + count
    vectors: dict[str, SparseVector] = {}
    for lexeme, occ in occurrences.items():
        values = {
            iid: (raw, raw / occ) for iid, raw in raw_counts.get(lexeme, {}).items()
        }
        vectors[lexeme] = SparseVector(lexeme, values, occ)
    return vectors


def binary_entropy(p: float) -> float:
    """Entropy of a Bernoulli(p) variable in bits."""
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * np.log2(p) + (1.0 - p) * np.log2(1.0 - p))


def rank_features(
    vectors: Sequence[SparseVector],
    labels: Mapping[str, bool],
    n_columns: int | None = None,
) -> FeatureRanking:
    """Rank value columns by gain ratio of column presence against the label.

    Columns are binarised (non-zero vs zero); constant columns score 0.
    Raises ``ValueError`` when the labels are degenerate (single class), in
    which case the caller should skip the classifier.
    """
    if len(vectors) < 2:
        raise ValueError("ranking needs at least two lexemes")
    y = np.array([bool(labels[v.lexeme]) for v in vectors])
    n = len(y)
    n1 = int(y.sum())
    if n1 == 0 or n1 == n:
        raise ValueError("degenerate labels: a single class present")
    if n_columns is None:
        n_columns = 1 + max(
            (c for v in vectors for c in v.nonzero_columns()), default=-1
        )
    cnt_all = np.zeros(n_columns, dtype=np.int64)
    cnt_pos = np.zeros(n_columns, dtype=np.int64)
    for v, positive in zip(vectors, y):
        for c in v.nonzero_columns():
            cnt_all[c] += 1
            if positive:
                cnt_pos[c] += 1

    h = np.vectorize(binary_entropy, otypes=[float])
    label_entropy = binary_entropy(n1 / n)
    a = cnt_all.astype(float)
    p_in = np.divide(cnt_pos, a, out=np.zeros(n_columns), where=a > 0)
    rest = n - a
    p_out = np.divide(n1 - cnt_pos, rest, out=np.zeros(n_columns), where=rest > 0)
    conditional = (a / n) * h(p_in) + (rest / n) * h(p_out)
    split_info = h(a / n)
    gain = label_entropy - conditional
    scores = np.where(split_info > 0.0, np.divide(
        gain, split_info, out=np.zeros(n_columns), where=split_info > 0.0
    ), 0.0)

    order = sorted(range(n_columns), key=lambda c: (-scores[c], c))
    return FeatureRanking(tuple(order), {c: float(scores[c]) for c in order})


def take_top(ranking: FeatureRanking, n: int = 100) -> set[int]:
    """The first ``min(n, len(ranking))`` column ids of the ranking."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return set(ranking.order[:n])


# ---------------------------------------------------------------------------
# Matrix file IO

def format_matrix(space: FeatureSpace, vectors: Mapping[str, SparseVector]) -> str:
    lines = ["#CAPS\t%d\t%d" % (space.per_type_cap, space.total_cap)]
    lines += space.header_lines()
    for lexeme in sorted(vectors):
        lines.append("#OCC\t%s\t%d" % (lexeme, vectors[lexeme].occurrences))
    for lexeme in sorted(vectors):
        vec = vectors[lexeme]
        cells = [
            "%d:%d:%s" % (iid, raw, repr(rel))
            for iid, (raw, rel) in sorted(vec.values.items())
        ]
        lines.append("%s\t%s" % (lexeme, " ".join(cells)) if cells else lexeme)
    return "\n".join(lines) + "\n"


def parse_matrix(source: Iterable[str]) -> tuple[FeatureSpace, dict[str, SparseVector]]:
    instances: list[tuple[str, str]] = []
    occurrences: dict[str, int] = {}
    caps = (50, 3900)
    data: list[tuple[str, str]] = []
    for lineno, raw_line in enumerate(source, start=1):
        line = raw_line.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#CAPS\t"):
            _, per_type, total = line.split("\t")
            caps = (int(per_type), int(total))
        elif line.startswith("#FEATURE\t"):
            _, iid, ftype, instance = line.split("\t")
            if int(iid) != len(instances):
                raise FeatureSpaceError("line %d: non-dense feature ids" % lineno)
            instances.append((ftype, instance))
        elif line.startswith("#OCC\t"):
            _, lexeme, occ = line.split("\t")
            occurrences[lexeme] = int(occ)
        elif line.startswith("#"):
            continue
        else:
            data.append((line, str(lineno)))
    space = FeatureSpace(tuple(instances), *caps)
    vectors: dict[str, SparseVector] = {}
    for line, lineno in data:
        lexeme, _, rest = line.partition("\t")
        values: dict[int, tuple[int, float]] = {}
        for cell in rest.split():
            iid_s, raw_s, rel_s = cell.split(":")
            values[int(iid_s)] = (int(raw_s), float(rel_s))
        if any(iid >= len(space) for iid in values):
            raise FeatureSpaceError("line %s: feature id outside the space" % lineno)
        vectors[lexeme] = SparseVector(lexeme, values, occurrences.get(lexeme, 0))
    return space, vectors
