from __future__ import annotations

import random
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from lexacq.lexicon import WordClass
from lexacq.morph import (
    ClusterLexicon,
    align_edit_ops,
    build_ngram_space,
    build_transformation_space,
    char_ngrams,
    derivational_features,
    load_cluster_lexicon,
)

N, V, A, R = WordClass.NOUN, WordClass.VERB, WordClass.ADJ, WordClass.ADV


# ---------------------------------------------------------------------------
# char_ngrams

def test_char_ngrams_exhaustive_small_word():
    assert char_ngrams("dog", 1, 3) == Counter(
        {"d": 1, "o": 1, "g": 1, "do": 1, "og": 1, "dog": 1}
    )


def test_char_ngrams_multiplicity():
    assert char_ngrams("aa", 1, 2) == Counter({"a": 2, "aa": 1})


def test_char_ngrams_sentinels():
    assert char_ngrams("dog", 1, 2, sentinels=True) == Counter(
        {"^": 1, "d": 1, "o": 1, "g": 1, "$": 1, "^d": 1, "do": 1, "og": 1, "g$": 1}
    )


def test_char_ngrams_empty_lemma_errors():
    with pytest.raises(ValueError):
        char_ngrams("", 1, 3)


@given(st.text(alphabet="abc", min_size=1, max_size=12), st.integers(1, 6))
def test_char_ngrams_fixed_length_count(word, n):
    grams = char_ngrams(word, n, n)
    assert sum(grams.values()) == max(0, len(word) - n + 1)


# ---------------------------------------------------------------------------
# build_ngram_space

def _grams_of(space):
    return {instance for _, instance in space.instances}


def test_ngram_space_keeps_unequal_frequencies():
    space = build_ngram_space(["aaa"] * 5, min_freq=3)
    # freq: a=15, aa=10, aaa=5 -- all unequal, all kept
    assert _grams_of(space) == {"a", "aa", "aaa"}


def test_ngram_space_substring_filter():
    space = build_ngram_space(["ab"] * 4, min_freq=3)
    # a, b and ab all have frequency 4; only the longest survives
    assert _grams_of(space) == {"ab"}


def test_ngram_space_frequency_threshold_kills_everything():
    assert len(build_ngram_space(["xy", "yz"], min_freq=3)) == 0


def test_ngram_space_cap_keeps_highest_saturation():
    # Three surviving 1-grams with equal saturation, cap at 2: ties break
    # by higher total frequency (a=18, c=15, b=12).
    words = ["aaa", "aab", "abc", "bbc", "ccc"]
    space = build_ngram_space(words * 3, min_freq=3, cap=2, n_min=1, n_max=1)
    assert [inst for _, inst in space.instances] == ["a", "c"]


def brute_force_ngram_space(words, min_freq, cap, n_min, n_max):
    """Independent reimplementation of the n-gram filters: direct counting,
    frequency threshold, equal-frequency superstring removal (checked
    against every longer threshold survivor), saturation capping."""
    freq = Counter()
    for w in words:
        for n in range(n_min, n_max + 1):
            for i in range(len(w) - n + 1):
                freq[w[i : i + n]] += 1
    above = {g for g in freq if freq[g] >= min_freq}
    kept = set()
    for g in above:
        shielded = any(
            g != t and len(t) > len(g) and g in t and freq[t] == freq[g]
            for t in above
        )
        if not shielded:
            kept.add(g)
    distinct = set(words)
    saturation = {g: sum(1 for w in distinct if g in w) / len(distinct) for g in kept}
    ranked = sorted(kept, key=lambda g: (-saturation[g], -freq[g], g))
    return ranked[:cap]


def test_ngram_space_matches_brute_force_on_random_lists():
    rng = random.Random(5)
    for _ in range(60):
        words = [
            "".join(rng.choice("abcd") for _ in range(rng.randint(1, 7)))
            for _ in range(rng.randint(1, 25))
        ]
        min_freq = rng.randint(1, 4)
        cap = rng.randint(1, 30)
        space = build_ngram_space(words, min_freq=min_freq, cap=cap, n_max=4)
        expected = brute_force_ngram_space(words, min_freq, cap, 1, 4)
        assert [inst for _, inst in space.instances] == expected


@given(
    st.lists(st.text(alphabet="ab", min_size=1, max_size=6), min_size=1, max_size=20),
    st.integers(1, 4),
    st.integers(1, 50),
)
def test_ngram_space_respects_threshold_and_cap(words, min_freq, cap):
    space = build_ngram_space(words, min_freq=min_freq, cap=cap, n_max=4)
    assert len(space) <= cap
    freq = Counter()
    for w in words:
        for g, c in char_ngrams(w, 1, 4).items():
            freq[g] += c
    assert all(freq[inst] >= min_freq for _, inst in space.instances)


# ---------------------------------------------------------------------------
# align_edit_ops

def test_align_suffix_rewrite():
    t = align_edit_ops(("achievement", N), ("achiever", N))
    assert t.render() == "N -ment$ -> N +r$"
    assert t.apply("achievement") == "achiever"


def test_align_class_change_only():
    t = align_edit_ops(("achieve", V), ("achieve", N))
    assert t.render() == "V -> N"
    assert t.ops == ()
    assert t.apply("achieve") == "achieve"


def test_align_prefix_addition():
    t = align_edit_ops(("happy", A), ("unhappy", A))
    assert t.render() == "Adj -> Adj +un^"
    assert t.apply("happy") == "unhappy"


def test_align_no_common_stem():
    assert align_edit_ops(("abc", N), ("xyz", N)) is None


def test_align_inverse_pairs():
    rng = random.Random(11)
    for _ in range(300):
        a = "".join(rng.choice("abcd") for _ in range(rng.randint(1, 8)))
        b = "".join(rng.choice("abcd") for _ in range(rng.randint(1, 8)))
        forward = align_edit_ops((a, N), (b, V))
        backward = align_edit_ops((b, V), (a, N))
        if forward is None:
            assert backward is None
            continue
        assert forward.apply(a) == b
        assert backward.apply(b) == a
        mirrored = {"add": "remove", "remove": "add"}
        assert sorted((op.site, mirrored[op.action], op.affix) for op in forward.ops) \
            == sorted((op.site, op.action, op.affix) for op in backward.ops)


# ---------------------------------------------------------------------------
# derivational features

ACHIEVE_CLUSTER = [
    [("achieve", V), ("achiever", N), ("achievable", A),
     ("achievability", N), ("achievement", N)],
]


def test_derivational_features_paper_cluster():
    clusters = ClusterLexicon(ACHIEVE_CLUSTER)
    feats = derivational_features("achievement", clusters, {N})
    rendered = {t.render() for t in feats}
    assert len(feats) == 4
    assert "N -ment$ -> N +r$" in rendered
    assert "N -ment$ -> V" in rendered


def test_derivational_features_empty_cluster_lexicon():
    assert derivational_features("anything", ClusterLexicon([]), {N}) == Counter()


def test_derivational_features_dehyphenation_fallback():
    clusters = ClusterLexicon([[("antihero", N), ("heroic", A)]])
    feats = derivational_features("anti-hero", clusters, {N})
    # Computed against antihero's cluster, including antihero itself.
    sources = {t.render() for t in feats}
    assert any("-> N" in r or "N" == r.split()[0] for r in sources)
    assert all(t.src_class == N for t in feats)
    assert len(feats) == 2


def test_derivational_features_deprefix_fallback():
    # The prefix is stripped only for the cluster lookup; alignment still
    # starts from the original lexeme's spelling.
    clusters = ClusterLexicon([[("settle", V), ("settlement", N)]])
    feats = derivational_features("unsettle", clusters, {V})
    rendered = {t.render() for t in feats}
    assert rendered == {"V -un^ -> V", "V -un^ -> N +ment$"}


def test_derivational_features_edit_distance_fallback():
    clusters = ClusterLexicon(
        [[("walk", V), ("walker", N)], [("talk", V), ("talking", N)]]
    )
    feats = derivational_features("walks", clusters, {V})
    # Nearest member is "walk" (distance 1); features come from its cluster.
    rendered = {t.render() for t in feats}
    assert rendered == {"V -s$ -> V", "V -s$ -> N +er$"}


def test_cluster_lexicon_load_and_errors():
    clusters = load_cluster_lexicon(["achieve_V achiever_N", "# comment", ""])
    assert len(clusters) == 1
    with pytest.raises(Exception):
        load_cluster_lexicon(["achieve_X"])


def test_transformation_space_filters_by_frequency():
    clusters = ClusterLexicon(
        [
            [("walk", V), ("walker", N)],
            [("talk", V), ("talker", N)],
            [("sing", V), ("singer", N)],
            [("run", V), ("ran", V)],
        ]
    )
    events = {
        lexeme: derivational_features(lexeme, clusters, {V})
        for lexeme in ["walk", "talk", "sing", "run"]
    }
    space = build_transformation_space(events, min_freq=3, cap=100)
    # +er$ fires for three lexemes; run/ran's idiosyncratic rewrite is rare.
    assert [inst for _, inst in space.instances] == ["V -> N +er$"]
    space_loose = build_transformation_space(events, min_freq=1, cap=100)
    assert len(space_loose) == 2
