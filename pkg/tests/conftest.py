from __future__ import annotations

import pytest

from lexacq.lexicon import LexicalEntry, LexicalType, SeedLexicon, WordClass

TAGS = {
    "noun": WordClass.NOUN,
    "verb": WordClass.VERB,
    "adj": WordClass.ADJ,
    "adv": WordClass.ADV,
}


def entry(lexeme: str, tag: str, type_name: str) -> LexicalEntry:
    return LexicalEntry(lexeme, LexicalType(type_name, TAGS[tag]))


def make_lexicon(rows) -> SeedLexicon:
    """Rows of (lexeme, tag, type_name) -> SeedLexicon."""
    return SeedLexicon(entry(*row) for row in rows)


ERG_STYLE_ROWS = [
    ("dog", "noun", "n_intr_le"),
    ("cat", "noun", "n_intr_le"),
    ("house", "noun", "n_intr_le"),
    ("idea", "noun", "n_intr_le"),
    ("water", "noun", "n_mass_le"),
    ("sand", "noun", "n_mass_le"),
    ("dog", "verb", "v_np_trans_le"),
    ("chase", "verb", "v_np_trans_le"),
    ("see", "verb", "v_np_trans_le"),
    ("sleep", "verb", "v_intr_le"),
    ("red", "adj", "adj_intrans_le"),
    ("big", "adj", "adj_intrans_le"),
    ("happy", "adj", "adj_intrans_le"),
    ("fond", "adj", "adj_pp_le"),
    ("quickly", "adv", "adv_int_vp_le"),
    ("slowly", "adv", "adv_int_vp_le"),
    ("however", "adv", "adv_disc_le"),
]


@pytest.fixture
def erg_style_lexicon() -> SeedLexicon:
    """Small lexicon whose per-class majority types match the usual
    grammar-scale defaults."""
    return make_lexicon(ERG_STYLE_ROWS)
