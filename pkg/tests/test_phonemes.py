"""Core inventory, lexicon, and predicate tests.

EXPECTED_TABLE below is an independent transcription of the 48-phoneme /
14-viseme partition; the implementation must match it row for row.
"""

import pytest
from hypothesis import given, strategies as st

from speechpractice import load_default_lexicon
from speechpractice.errors import (
    EmptySequenceError,
    LexiconParseError,
    UnknownSymbolError,
    UnknownWordError,
)
from speechpractice.phonemes import (
    CATEGORY_CONSONANT,
    CATEGORY_PAUSE,
    CATEGORY_VOWEL,
    CONSONANTS,
    PHONEMES,
    VISEME_CLASS_IDS,
    VISEME_CLASSES,
    VOWELS,
    Lipshape,
    are_homophenous,
    initial_consonant,
    parse_lexicon,
    pronounce,
    validate_word_for_lipshape,
    viseme_of,
    viseme_sequence,
)

EXPECTED_TABLE = {
    "/p/": {"P", "B", "M", "EM"},
    "/f/": {"F", "V"},
    "/t/": {"T", "D", "S", "Z", "TH", "DH", "DX"},
    "/w/": {"W", "WH", "R"},
    "/ch/": {"CH", "JH", "SH", "ZH"},
    "/ey/": {"EH", "EY", "AE", "AW"},
    "/k/": {"K", "G", "N", "L", "NX", "HH", "Y", "EL", "EN", "NG"},
    "/iy/": {"IH", "IY"},
    "/ah/": {"AH", "AY"},
    "/er/": {"ER"},
    "/ao/": {"AO", "OY", "IX", "OW"},
    "/uh/": {"UH", "UW"},
    "/aa/": {"AA"},
    "/sp/": {"SIL", "SP"},
}


class TestInventory:
    def test_48_tokens(self):
        assert len(PHONEMES) == 48
        assert len(CONSONANTS) == 30
        assert len(VOWELS) == 16

    def test_pause_category(self):
        for symbol, phoneme in PHONEMES.items():
            if symbol in ("SIL", "SP"):
                assert phoneme.category == CATEGORY_PAUSE
            else:
                assert phoneme.category in (CATEGORY_CONSONANT, CATEGORY_VOWEL)

    def test_partition_matches_expected_table(self):
        assert set(VISEME_CLASS_IDS) == set(EXPECTED_TABLE)
        for cid, members in EXPECTED_TABLE.items():
            assert set(VISEME_CLASSES[cid].members) == members, cid

    def test_partition_is_exact(self):
        all_members = [m for c in VISEME_CLASSES.values() for m in c.members]
        assert len(all_members) == 48
        assert set(all_members) == set(PHONEMES)
        ids = list(VISEME_CLASSES)
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                assert not (VISEME_CLASSES[a].members & VISEME_CLASSES[b].members)


class TestVisemeOf:
    @pytest.mark.parametrize(
        "symbol,viseme",
        [("P", "/p/"), ("SIL", "/sp/"), ("ER", "/er/"), ("V", "/f/"), ("AE", "/ey/")],
    )
    def test_anchors(self, symbol, viseme):
        assert viseme_of(symbol) == viseme

    def test_total_on_inventory(self):
        for symbol in PHONEMES:
            assert viseme_of(symbol) in VISEME_CLASSES

    @pytest.mark.parametrize("bad", ["XQ", "", "p", "AE1", "Q"])
    def test_rejects_unknown(self, bad):
        with pytest.raises(UnknownSymbolError):
            viseme_of(bad)

    def test_sequence(self):
        assert viseme_sequence(["F", "AE", "N"]) == ["/f/", "/ey/", "/k/"]
        assert viseme_sequence(["V", "AE", "N"]) == ["/f/", "/ey/", "/k/"]
        assert viseme_sequence([]) == []

    def test_sequence_unknown(self):
        with pytest.raises(UnknownSymbolError):
            viseme_sequence(["B", "XQ"])


class TestLexiconParsing:
    def test_single_entry_stress_stripped(self):
        lex = parse_lexicon("BAT  B AE1 T")
        assert pronounce("BAT", lex) == ("B", "AE", "T")

    def test_two_entries(self):
        lex = parse_lexicon("FAN  F AE N\nVAN  V AE N")
        assert len(lex) == 2

    def test_unknown_token(self):
        with pytest.raises(LexiconParseError) as err:
            parse_lexicon("BAT  B XQ T")
        assert err.value.line_no == 1

    def test_line_numbers_in_errors(self):
        with pytest.raises(LexiconParseError) as err:
            parse_lexicon("BAT  B AE T\nJUNK\n")
        assert err.value.line_no == 2

    def test_comments_and_blanks_skipped(self):
        lex = parse_lexicon(";;; a comment\n\nBAT  B AE T\n")
        assert "bat" in lex

    def test_duplicates_accumulate_alternates(self):
        lex = parse_lexicon("THE  DH AH0\nTHE  DH IY0")
        entries = lex.pronunciations("the")
        assert [e.phonemes for e in entries] == [("DH", "AH"), ("DH", "IY")]
        assert pronounce("the", lex) == ("DH", "AH")

    def test_stress_digit_range(self):
        lex = parse_lexicon("TEST  T EH2 S T0")
        assert pronounce("test", lex) == ("T", "EH", "S", "T")
        with pytest.raises(LexiconParseError):
            parse_lexicon("TEST  T EH3 S T")


class TestPronounce:
    def test_case_insensitive(self, lexicon):
        assert pronounce("Bat", lexicon) == ("B", "AE", "T")
        assert pronounce("bat", lexicon) == pronounce("BAT", lexicon)

    def test_unknown_word(self, lexicon):
        with pytest.raises(UnknownWordError):
            pronounce("zzqx", lexicon)


class TestInitialConsonant:
    def test_consonant_initial(self):
        assert initial_consonant(["B", "AE", "T"]) == "B"

    def test_vowel_initial(self):
        assert initial_consonant(["AE", "T"]) is None

    def test_pause_initial(self):
        assert initial_consonant(["SIL"]) is None

    def test_empty(self):
        with pytest.raises(EmptySequenceError):
            initial_consonant([])


PBM = Lipshape("P/B/M", frozenset({"P", "B", "M"}))


class TestValidateWord:
    def test_ok(self, lexicon):
        assert validate_word_for_lipshape("Puddle", PBM, lexicon) == []

    def test_capitalization(self, lexicon):
        assert validate_word_for_lipshape("puddle", PBM, lexicon) == ["capitalization"]

    def test_wrong_initial(self, lexicon):
        assert validate_word_for_lipshape("Sat", PBM, lexicon) == ["initial-phoneme"]

    def test_not_a_word(self, lexicon):
        violations = validate_word_for_lipshape("Zzqx", PBM, lexicon)
        assert violations == ["not-a-word"]

    def test_multiple_violations(self, lexicon):
        violations = validate_word_for_lipshape("sat", PBM, lexicon)
        assert violations == ["capitalization", "initial-phoneme"]

    def test_vowel_initial_word_fails_rule_c(self, lexicon):
        assert validate_word_for_lipshape("At", PBM, lexicon) == ["initial-phoneme"]

    def test_acceptance_matches_membership(self, lexicon):
        # brute-force: acceptance iff the initial consonant is a member
        shapes = [
            PBM,
            Lipshape("S/D/T", frozenset({"S", "D", "T"})),
            Lipshape("L/N/K", frozenset({"L", "N", "K"})),
        ]
        for word in lexicon.words():
            stored = word.capitalize()
            first = initial_consonant(pronounce(word, lexicon))
            for shape in shapes:
                ok = validate_word_for_lipshape(stored, shape, lexicon) == []
                assert ok == (first is not None and first in shape.member_phonemes)

    def test_lipshape_requires_consonants(self):
        with pytest.raises(ValueError):
            Lipshape("bad", frozenset({"AE"}))
        with pytest.raises(ValueError):
            Lipshape("empty", frozenset())

    def test_default_lipshapes_overlap(self):
        kgn = Lipshape("K/G/N", frozenset({"K", "G", "N"}))
        lnk = Lipshape("L/N/K", frozenset({"L", "N", "K"}))
        assert kgn.member_phonemes & lnk.member_phonemes == {"N", "K"}


class TestHomophenes:
    def test_fan_van(self, lexicon):
        assert are_homophenous("fan", "van", lexicon)

    def test_bat_pat(self, lexicon):
        assert are_homophenous("bat", "pat", lexicon)

    def test_bat_sun(self, lexicon):
        assert not are_homophenous("bat", "sun", lexicon)

    def test_unknown_word(self, lexicon):
        with pytest.raises(UnknownWordError):
            are_homophenous("bat", "zzqx", lexicon)

    def test_reflexive_and_symmetric(self, lexicon):
        words = lexicon.words()[:40]
        for w in words:
            assert are_homophenous(w, w, lexicon)
        for a in words[:12]:
            for b in words[:12]:
                assert are_homophenous(a, b, lexicon) == are_homophenous(b, a, lexicon)

    def test_criterion_is_viseme_sequence_equality(self, lexicon):
        words = lexicon.words()
        for a in words[:25]:
            for b in words[:25]:
                expected = viseme_sequence(pronounce(a, lexicon)) == viseme_sequence(
                    pronounce(b, lexicon)
                )
                assert are_homophenous(a, b, lexicon) == expected


@given(st.lists(st.sampled_from(sorted(PHONEMES)), max_size=12))
def test_viseme_sequence_preserves_length(symbols):
    assert len(viseme_sequence(symbols)) == len(symbols)


@given(st.text(alphabet="ABCDEFGHIJKLMNOPQRSTUVWXYZ", min_size=1, max_size=3))
def test_viseme_of_never_misclassifies(token):
    if token in PHONEMES:
        assert viseme_of(token) in VISEME_CLASSES
    else:
        with pytest.raises(UnknownSymbolError):
            viseme_of(token)


def test_default_lexicon_loads():
    lex = load_default_lexicon()
    assert len(lex) > 100
    assert "puddle" in lex
