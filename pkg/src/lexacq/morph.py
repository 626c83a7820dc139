"""Morphological feature extraction: character n-grams and derivational
transformations read off a cluster lexicon of derivationally related words.

Cluster lexicon format: UTF-8, one cluster per line, members space-separated
as ``lemma_C`` with C one of N/V/A/R.  Word list format: one lemma per line.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .featurespace import FeatureSpace, rank_instances_by_saturation
from .lexicon import LexiconError, WordClass

SENTINEL_START = "^"
SENTINEL_END = "$"

#: Prefixes tried (longest first) when looking up an out-of-lexicon lemma.
DEFAULT_PREFIXES = ("anti", "dis", "non", "un", "re", "de", "in", "im")


def char_ngrams(
    lemma: str, n_min: int = 1, n_max: int = 6, sentinels: bool = False
) -> Counter:
    """All contiguous substrings of length ``n_min..n_max``, with multiplicity.

    With ``sentinels`` the lemma is wrapped in ``^``/``$`` boundary markers
    before enumeration, so affix-adjacent n-grams become distinguishable.
    """
    if not lemma:
        raise ValueError("lemma must be non-empty")
    if not 1 <= n_min <= n_max:
        raise ValueError("need 1 <= n_min <= n_max")
    text = SENTINEL_START + lemma + SENTINEL_END if sentinels else lemma
    grams: Counter = Counter()
    for n in range(n_min, n_max + 1):
        for i in range(len(text) - n + 1):
            grams[text[i : i + n]] += 1
    return grams


def build_ngram_space(
    word_list: Sequence[str],
    min_freq: int = 3,
    cap: int = 3900,
    n_min: int = 1,
    n_max: int = 6,
    sentinels: bool = False,
) -> FeatureSpace:
    """Build the n-gram feature space over a word list.

    Filters applied in order: drop n-grams with total frequency below
    ``min_freq``; drop n-grams whose frequency equals that of a strictly
    longer surviving n-gram containing them as a proper substring; keep the
    ``cap`` n-grams of highest saturation (share of distinct lemmas
    containing the n-gram), ties broken by higher frequency then
    lexicographically.
    """
    if not word_list:
        raise ValueError("word list must be non-empty")
    freq: Counter = Counter()
    holders: dict[str, set[str]] = {}
    for lemma in word_list:
        for gram, count in char_ngrams(lemma, n_min, n_max, sentinels).items():
            freq[gram] += count
            holders.setdefault(gram, set()).add(lemma)

    survivors = {g for g, c in freq.items() if c >= min_freq}
    # Longest first, so that an n-gram removed here cannot shield its own
    # proper substrings from removal.
    kept: set[str] = set()
    for gram in sorted(survivors, key=len, reverse=True):
        if not any(
            len(longer) > len(gram) and gram in longer and freq[longer] == freq[gram]
            for longer in kept
        ):
            kept.add(gram)

    n_lexemes = len(set(word_list))
    stats = {g: (freq[g], holders[g]) for g in kept}
    chosen = rank_instances_by_saturation(stats, n_lexemes, cap)
    return FeatureSpace(
        tuple(("ngram", g) for g in chosen), per_type_cap=cap, total_cap=cap
    )


# ---------------------------------------------------------------------------
# Derivational transformations

PREFIX, SUFFIX = "prefix", "suffix"
ADD, REMOVE = "add", "remove"


@dataclass(frozen=True)
class EditOp:
    site: str
    action: str
    affix: str

    def render(self) -> str:
        sign = "+" if self.action == ADD else "-"
        if self.site == PREFIX:
            return "%s%s%s" % (sign, self.affix, SENTINEL_START)
        return "%s%s%s" % (sign, self.affix, SENTINEL_END)


@dataclass(frozen=True)
class Transformation:
    """An affix rewrite between two derivationally related lemmas."""

    src_class: WordClass
    tgt_class: WordClass
    ops: tuple[EditOp, ...]

    def render(self) -> str:
        removals = [op.render() for op in self.ops if op.action == REMOVE]
        additions = [op.render() for op in self.ops if op.action == ADD]
        left = " ".join([self.src_class.short] + removals)
        right = " ".join([self.tgt_class.short] + additions)
        return "%s -> %s" % (left, right)

    def apply(self, lemma: str) -> str:
        """Run the edit operations over a source lemma."""
        out = lemma
        for op in self.ops:
            if op.action == REMOVE and op.site == PREFIX:
                if not out.startswith(op.affix):
                    raise ValueError("cannot remove prefix %r from %r" % (op.affix, out))
                out = out[len(op.affix) :]
            elif op.action == REMOVE and op.site == SUFFIX:
                if not out.endswith(op.affix):
                    raise ValueError("cannot remove suffix %r from %r" % (op.affix, out))
                out = out[: len(out) - len(op.affix)]
            elif op.site == PREFIX:
                out = op.affix + out
            else:
                out = out + op.affix
        return out


def _longest_common_stem(a: str, b: str) -> tuple[str, int, int] | None:
    """Longest common contiguous substring and its first position in each
    lemma.  Ties on length pick the lexicographically smallest substring,
    which keeps alignment symmetric in its two arguments."""
    best: str | None = None
    if not a or not b:
        return None
    lengths = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            if a[i - 1] == b[j - 1]:
                lengths[i][j] = lengths[i - 1][j - 1] + 1
                n = lengths[i][j]
                stem = a[i - n : i]
                if best is None or n > len(best) or (n == len(best) and stem < best):
                    best = stem
    if not best:
        return None
    return best, a.index(best), b.index(best)


def align_edit_ops(
    a: tuple[str, WordClass], b: tuple[str, WordClass]
) -> Transformation | None:
    """Affix edit operations rewriting lemma ``a`` into lemma ``b`` around
    their longest common stem, or None when no stem is shared."""
    lemma_a, class_a = a
    lemma_b, class_b = b
    stem = _longest_common_stem(lemma_a, lemma_b)
    if stem is None:
        return None
    text, pos_a, pos_b = stem
    ops: list[EditOp] = []
    if pos_a:
        ops.append(EditOp(PREFIX, REMOVE, lemma_a[:pos_a]))
    if pos_a + len(text) < len(lemma_a):
        ops.append(EditOp(SUFFIX, REMOVE, lemma_a[pos_a + len(text) :]))
    if pos_b:
        ops.append(EditOp(PREFIX, ADD, lemma_b[:pos_b]))
    if pos_b + len(text) < len(lemma_b):
        ops.append(EditOp(SUFFIX, ADD, lemma_b[pos_b + len(text) :]))
    return Transformation(class_a, class_b, tuple(ops))


class ClusterLexicon:
    """Clusters of derivationally related (lemma, word class) members."""

    def __init__(self, clusters: Iterable[Iterable[tuple[str, WordClass]]]):
        self.clusters = tuple(frozenset(c) for c in clusters)
        if any(not c for c in self.clusters):
            raise LexiconError("empty cluster")
        self._by_lemma: dict[str, list[int]] = {}
        for idx, cluster in enumerate(self.clusters):
            for lemma, _ in cluster:
                ids = self._by_lemma.setdefault(lemma, [])
                if idx not in ids:
                    ids.append(idx)

    def __len__(self) -> int:
        return len(self.clusters)

    def clusters_of(self, lemma: str) -> list[int]:
        return list(self._by_lemma.get(lemma, []))

    @property
    def member_lemmas(self) -> tuple[str, ...]:
        return tuple(sorted(self._by_lemma))


def load_cluster_lexicon(source: Iterable[str]) -> ClusterLexicon:
    clusters = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        members = []
        for item in line.split():
            lemma, sep, letter = item.rpartition("_")
            if not sep or not lemma:
                raise LexiconError("line %d: bad cluster member %r" % (lineno, item))
            members.append((lemma, WordClass.from_letter(letter)))
        clusters.append(members)
    return ClusterLexicon(clusters)


def _levenshtein(a: str, b: str) -> int:
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + (ca != cb))
            )
        previous = current
    return previous[-1]


def _resolve_clusters(
    lexeme: str, clusters: ClusterLexicon, prefixes: Sequence[str]
) -> list[int]:
    """Cluster lookup with fallbacks: exact lemma, dehyphenated lemma,
    deprefixed lemma (longest prefix first), then the member with smallest
    edit distance (ties: lexicographically smallest member)."""
    found = clusters.clusters_of(lexeme)
    if found:
        return found
    if "-" in lexeme:
        found = clusters.clusters_of(lexeme.replace("-", ""))
        if found:
            return found
    for prefix in sorted(prefixes, key=lambda p: (-len(p), p)):
        if lexeme.startswith(prefix) and len(lexeme) > len(prefix):
            found = clusters.clusters_of(lexeme[len(prefix) :])
            if found:
                return found
    best: tuple[int, str] | None = None
    for member in clusters.member_lemmas:
        distance = _levenshtein(lexeme, member)
        if best is None or distance < best[0]:
            best = (distance, member)
    if best is None:
        return []
    return clusters.clusters_of(best[1])


def derivational_features(
    lexeme: str,
    clusters: ClusterLexicon,
    word_class_hint: set[WordClass],
    prefixes: Sequence[str] = DEFAULT_PREFIXES,
) -> Counter:
    """Transformations aligning a lexeme with every sister in its cluster(s).

    The lexeme's clusters are located with the fallback chain of
    :func:`_resolve_clusters`; each hinted word class is used as the source
    class.  Returns a multiset of :class:`Transformation`; empty when no
    cluster is resolvable.
    """
    features: Counter = Counter()
    if not len(clusters):
        return features
    resolved = _resolve_clusters(lexeme, clusters, prefixes)
    if not resolved:
        return features
    sisters: set[tuple[str, WordClass]] = set()
    for idx in resolved:
        sisters |= clusters.clusters[idx]
    for src_class in sorted(word_class_hint, key=lambda c: c.value):
        source = (lexeme, src_class)
        for sister in sorted(sisters, key=lambda m: (m[0], m[1].value)):
            if sister == source:
                continue
            transformation = align_edit_ops(source, sister)
            if transformation is not None:
                features[transformation] += 1
    return features


def build_transformation_space(
    events: Mapping[str, Counter],
    min_freq: int = 3,
    cap: int = 3900,
) -> FeatureSpace:
    """Feature space over rendered transformations, filtered like n-grams:
    total frequency >= ``min_freq``, then saturation-capped to ``cap``.

    ``events`` maps lexeme -> multiset of Transformation.
    """
    freq: Counter = Counter()
    holders: dict[str, set[str]] = {}
    for lexeme, transformations in events.items():
        for transformation, count in transformations.items():
            rendered = transformation.render()
            freq[rendered] += count
            holders.setdefault(rendered, set()).add(lexeme)
    stats = {
        r: (freq[r], holders[r]) for r in freq if freq[r] >= min_freq
    }
    chosen = rank_instances_by_saturation(stats, len(events), cap)
    return FeatureSpace(
        tuple(("deriv", r) for r in chosen), per_type_cap=cap, total_cap=cap
    )
