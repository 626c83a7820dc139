from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from lexacq.lexicon import (
    LexicalEntry,
    LexicalType,
    LexiconError,
    SeedLexicon,
    WordClass,
    filter_inventory,
    load_seed_lexicon,
    majority_default,
    serialize_seed_lexicon,
)

from conftest import make_lexicon


def test_load_single_line():
    lex = load_seed_lexicon(["dog\tnoun\tn_intr_le"])
    assert len(lex) == 1
    assert lex.classes_of("dog") == {WordClass.NOUN}


def test_load_polysemous_lexeme():
    lex = load_seed_lexicon(["dog\tnoun\tn_intr_le", "dog\tverb\tv_np_trans_le"])
    assert len(lex.entries) == 2
    assert lex.classes_of("dog") == {WordClass.NOUN, WordClass.VERB}


def test_load_rejects_wrong_field_count():
    with pytest.raises(LexiconError, match="3 tab-separated"):
        load_seed_lexicon(["dog\tnoun"])


def test_load_rejects_unknown_tag():
    with pytest.raises(LexiconError, match="word-class tag"):
        load_seed_lexicon(["dog\tpronoun\tn_intr_le"])


def test_load_rejects_type_under_two_classes():
    with pytest.raises(LexiconError, match="two word classes"):
        load_seed_lexicon(["dog\tnoun\tx_le", "run\tverb\tx_le"])


def test_load_rejects_multiword_lexeme():
    with pytest.raises(LexiconError, match="single token"):
        load_seed_lexicon(["hot dog\tnoun\tn_intr_le"])


def test_load_lowercases_and_collapses_duplicates(caplog):
    lex = load_seed_lexicon(
        ["Dog\tnoun\tn_intr_le", "dog\tnoun\tn_intr_le", "# comment", ""]
    )
    assert len(lex) == 1
    assert lex.n_duplicates == 1
    assert lex.lexemes == ("dog",)


def test_comments_and_blanks_ignored():
    lex = load_seed_lexicon(["# a comment", "", "dog\tnoun\tn_intr_le"])
    assert len(lex) == 1


def test_round_trip(erg_style_lexicon):
    text = serialize_seed_lexicon(erg_style_lexicon)
    assert load_seed_lexicon(text.splitlines()) == erg_style_lexicon


_lexeme = st.text(alphabet="abcdefg", min_size=1, max_size=6)
_tag = st.sampled_from(["noun", "verb", "adj", "adv"])


@given(
    st.lists(st.tuples(_lexeme, _tag, st.integers(0, 4)), min_size=1, max_size=30)
)
def test_round_trip_random(rows):
    # Distinct word classes must not share a type name.
    lex = make_lexicon([(w, tag, "%s_%d_le" % (tag, i)) for w, tag, i in rows])
    assert load_seed_lexicon(serialize_seed_lexicon(lex).splitlines()) == lex


def test_filter_inventory_by_count():
    rows = [("w%d" % i, "noun", "type_a") for i in range(12)]
    rows += [("x%d" % i, "noun", "type_b") for i in range(9)]
    lex = make_lexicon(rows)
    kept = filter_inventory(lex, 10)
    assert {t.name for t in kept} == {"type_a"}
    assert filter_inventory(lex, 1) == lex.inventory


def test_filter_inventory_empty_lexicon():
    assert filter_inventory(SeedLexicon(()), 10) == set()


@given(st.integers(1, 6), st.integers(1, 6))
def test_filter_inventory_monotone(a, b):
    rows = [("w%d%d" % (i, j), "noun", "type_%d" % j) for j in range(4) for i in range(j + 1)]
    lex = make_lexicon(rows)
    low, high = min(a, b), max(a, b)
    assert filter_inventory(lex, high) <= filter_inventory(lex, low)


def test_majority_defaults(erg_style_lexicon):
    assert majority_default(WordClass.NOUN, erg_style_lexicon).name == "n_intr_le"
    assert majority_default(WordClass.VERB, erg_style_lexicon).name == "v_np_trans_le"
    assert majority_default(WordClass.ADJ, erg_style_lexicon).name == "adj_intrans_le"
    assert majority_default(WordClass.ADV, erg_style_lexicon).name == "adv_int_vp_le"


def test_majority_default_tie_breaks_lexicographically():
    rows = [("a", "noun", "type_y"), ("b", "noun", "type_y"),
            ("c", "noun", "type_x"), ("d", "noun", "type_x")]
    lex = make_lexicon(rows)
    assert majority_default(WordClass.NOUN, lex).name == "type_x"


def test_majority_default_class_matches(erg_style_lexicon):
    for wc in WordClass:
        assert majority_default(wc, erg_style_lexicon).word_class == wc


def test_majority_default_absent_class_errors():
    lex = make_lexicon([("dog", "noun", "n_intr_le")])
    with pytest.raises(LexiconError, match="no entries"):
        majority_default(WordClass.ADV, lex)


def test_restrict(erg_style_lexicon):
    sub = erg_style_lexicon.restrict(["dog", "cat"])
    assert sub.lexemes == ("cat", "dog")
    assert len(sub.entries) == 3  # dog is both noun and verb
