"""Phoneme inventory, viseme classification, and pronunciation lexicon.

The inventory is the 48-token ARPABET set used throughout the toolkit:
46 speech phonemes (30 consonants, 16 vowels) plus the two pause tokens
SIL and SP.  The 48 tokens partition into 14 viseme classes; words whose
default pronunciations map to the same viseme sequence are homophenes and
are visually indistinguishable when spoken.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    EmptySequenceError,
    LexiconParseError,
    UnknownSymbolError,
    UnknownWordError,
)

CATEGORY_VOWEL = "vowel"
CATEGORY_CONSONANT = "consonant"
CATEGORY_PAUSE = "pause"


@dataclass(frozen=True)
class Phoneme:
    """One ARPABET token with its IPA rendering and broad category."""

    symbol: str
    ipa: str
    category: str


@dataclass(frozen=True)
class VisemeClass:
    """A group of phonemes that share one visual mouth shape."""

    id: str
    members: frozenset[str]


# symbol -> (ipa, viseme class id). Order within each class block is the
# table's row order; category is derived below.
_CONSONANTS = {
    "P": ("p", "/p/"),
    "B": ("b", "/p/"),
    "M": ("m", "/p/"),
    "EM": ("m̩", "/p/"),
    "F": ("f", "/f/"),
    "V": ("v", "/f/"),
    "T": ("t", "/t/"),
    "D": ("d", "/t/"),
    "S": ("s", "/t/"),
    "Z": ("z", "/t/"),
    "TH": ("θ", "/t/"),
    "DH": ("ð", "/t/"),
    "DX": ("ɾ", "/t/"),
    "W": ("w", "/w/"),
    "WH": ("ʍ", "/w/"),
    "R": ("r", "/w/"),
    "CH": ("tʃ", "/ch/"),
    "JH": ("dʒ", "/ch/"),
    "SH": ("ʃ", "/ch/"),
    "ZH": ("ʒ", "/ch/"),
    "K": ("k", "/k/"),
    "G": ("g", "/k/"),
    "N": ("n", "/k/"),
    "L": ("l", "/k/"),
    "NX": ("ɾ̃", "/k/"),
    "HH": ("h", "/k/"),
    "Y": ("j", "/k/"),
    "EL": ("l̩", "/k/"),
    "EN": ("n̩", "/k/"),
    "NG": ("ŋ", "/k/"),
}

_VOWELS = {
    "EH": ("ɛ", "/ey/"),
    "EY": ("eɪ", "/ey/"),
    "AE": ("æ", "/ey/"),
    "AW": ("aʊ", "/ey/"),
    "IH": ("ɪ", "/iy/"),
    "IY": ("i", "/iy/"),
    "AH": ("ʌ", "/ah/"),
    "AY": ("aɪ", "/ah/"),
    "ER": ("ɝ", "/er/"),
    "AO": ("ɔ", "/ao/"),
    "OY": ("ɔɪ", "/ao/"),
    "IX": ("ɨ", "/ao/"),
    "OW": ("oʊ", "/ao/"),
    "UH": ("ʊ", "/uh/"),
    "UW": ("u", "/uh/"),
    "AA": ("ɑ", "/aa/"),
}

_PAUSES = {
    "SIL": ("—", "/sp/"),
    "SP": ("—", "/sp/"),
}

PHONEMES: dict[str, Phoneme] = {}
_VISEME_OF: dict[str, str] = {}
for _table, _cat in (
    (_CONSONANTS, CATEGORY_CONSONANT),
    (_VOWELS, CATEGORY_VOWEL),
    (_PAUSES, CATEGORY_PAUSE),
):
    for _sym, (_ipa, _vis) in _table.items():
        PHONEMES[_sym] = Phoneme(_sym, _ipa, _cat)
        _VISEME_OF[_sym] = _vis

VISEME_CLASS_IDS = (
    "/p/", "/f/", "/t/", "/w/", "/ch/", "/ey/", "/k/",
    "/iy/", "/ah/", "/er/", "/ao/", "/uh/", "/aa/", "/sp/",
)

VISEME_CLASSES: dict[str, VisemeClass] = {
    cid: VisemeClass(cid, frozenset(s for s, v in _VISEME_OF.items() if v == cid))
    for cid in VISEME_CLASS_IDS
}

CONSONANTS = frozenset(_CONSONANTS)
VOWELS = frozenset(_VOWELS)
PAUSES = frozenset(_PAUSES)


def is_consonant(symbol: str) -> bool:
    return symbol in CONSONANTS


def is_vowel(symbol: str) -> bool:
    return symbol in VOWELS


def viseme_of(symbol: str) -> str:
    """Return the viseme class id containing ``symbol``."""
    try:
        return _VISEME_OF[symbol]
    except KeyError:
        raise UnknownSymbolError(f"unknown phoneme symbol {symbol!r}") from None


def viseme_sequence(phonemes: Sequence[str]) -> list[str]:
    """Elementwise viseme classification; length is preserved."""
    return [viseme_of(p) for p in phonemes]


def initial_consonant(phonemes: Sequence[str]) -> str | None:
    """First symbol if it is a consonant, else None (vowel- or pause-initial)."""
    if not phonemes:
        raise EmptySequenceError("empty phoneme sequence")
    first = phonemes[0]
    if first not in PHONEMES:
        raise UnknownSymbolError(f"unknown phoneme symbol {first!r}")
    return first if first in CONSONANTS else None


@dataclass(frozen=True)
class PronunciationEntry:
    """One word with one pronunciation (stress digits already stripped)."""

    word: str
    phonemes: tuple[str, ...]


class Lexicon:
    """Case-insensitive word -> pronunciations map.

    The first pronunciation listed for a word is its default; later
    duplicate lines accumulate alternates.
    """

    def __init__(self, entries: Iterable[PronunciationEntry] = ()):
        self._entries: dict[str, list[PronunciationEntry]] = {}
        for entry in entries:
            self.add(entry)

    def add(self, entry: PronunciationEntry) -> None:
        self._entries.setdefault(entry.word.strip().lower(), []).append(entry)

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, word: str) -> bool:
        return word.strip().lower() in self._entries

    def words(self) -> list[str]:
        return sorted(self._entries)

    def pronunciations(self, word: str) -> list[PronunciationEntry]:
        key = word.strip().lower()
        if key not in self._entries:
            raise UnknownWordError(f"word {word!r} is not in the lexicon")
        return list(self._entries[key])


_STRESS_RE = re.compile(r"^([A-Z]{1,3})([0-2])?$")


def parse_lexicon(text: str) -> Lexicon:
    """Parse lexicon file content.

    One entry per line: word, whitespace, space-separated ARPABET tokens.
    A trailing stress digit 0-2 on a token is stripped. Lines starting with
    ``;;;`` are comments; blank lines are skipped.
    """
    lexicon = Lexicon()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(";;;"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise LexiconParseError("expected a word followed by phonemes", line_no)
        word, tokens = parts[0], parts[1:]
        phonemes = []
        for token in tokens:
            m = _STRESS_RE.match(token)
            if not m or m.group(1) not in PHONEMES:
                raise LexiconParseError(f"unknown phoneme token {token!r}", line_no)
            phonemes.append(m.group(1))
        lexicon.add(PronunciationEntry(word, tuple(phonemes)))
    return lexicon


def pronounce(word: str, lexicon: Lexicon) -> tuple[str, ...]:
    """Default (first listed) pronunciation of ``word``."""
    return lexicon.pronunciations(word)[0].phonemes


def are_homophenous(w1: str, w2: str, lexicon: Lexicon) -> bool:
    """True iff the words' default pronunciations share a viseme sequence."""
    return viseme_sequence(pronounce(w1, lexicon)) == viseme_sequence(
        pronounce(w2, lexicon)
    )


@dataclass(frozen=True)
class Lipshape:
    """A user-facing group of visually similar initial consonants.

    Lipshapes may overlap (N appears in both "K/G/N" and "L/N/K"); they are
    not required to partition the consonant inventory.
    """

    name: str
    member_phonemes: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self):
        if not self.member_phonemes:
            raise ValueError("a lipshape needs at least one member phoneme")
        bad = set(self.member_phonemes) - CONSONANTS
        if bad:
            raise ValueError(f"non-consonant members: {sorted(bad)}")


VIOLATION_NOT_A_WORD = "not-a-word"
VIOLATION_CAPITALIZATION = "capitalization"
VIOLATION_INITIAL_PHONEME = "initial-phoneme"


def validate_word_for_lipshape(
    word: str, lipshape: Lipshape, lexicon: Lexicon
) -> list[str]:
    """Check a word against a lipshape's entry rules.

    Returns the (possibly empty) list of violated rules:
    the word must be in the lexicon, its stored orthography must start with
    a capital letter, and its initial consonant must be one of the
    lipshape's member phonemes.
    """
    violations = []
    word = word.strip()
    if not word or not word[0].isupper():
        violations.append(VIOLATION_CAPITALIZATION)
    if word not in lexicon:
        violations.append(VIOLATION_NOT_A_WORD)
    else:
        first = initial_consonant(pronounce(word, lexicon))
        if first is None or first not in lipshape.member_phonemes:
            violations.append(VIOLATION_INITIAL_PHONEME)
    return violations
