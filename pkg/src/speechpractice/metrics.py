"""Scoring instruments: detection-log F1, proficiency-test percent score,
and Levenshtein-based transcription error measures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import CorpusParseError, EmptyCorpusError, EmptyLogError, UnknownWordError
from .phonemes import Lexicon, pronounce


@dataclass(frozen=True)
class ResponseTrial:
    is_target: bool
    responded: bool


@dataclass(frozen=True)
class ScoreReport:
    precision: float
    recall: float
    f1: float
    tp: int
    fp: int
    fn: int
    tn: int


def f1_score(trials: Sequence[ResponseTrial], exclude_first: int = 0) -> ScoreReport:
    """Precision/recall/F1 over a detection log.

    The first ``exclude_first`` trials are treated as training and dropped.
    Precision and recall collapse to 0 when their denominators are 0, and
    F1 is 0 when precision + recall is 0.
    """
    if exclude_first < 0:
        raise ValueError("exclude_first must be >= 0")
    scored = trials[exclude_first:]
    if not scored:
        raise EmptyLogError("no trials remain after the exclusion window")
    tp = sum(1 for t in scored if t.is_target and t.responded)
    fp = sum(1 for t in scored if not t.is_target and t.responded)
    fn = sum(1 for t in scored if t.is_target and not t.responded)
    tn = len(scored) - tp - fp - fn
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return ScoreReport(precision, recall, f1, tp, fp, fn, tn)


SPT_KEY_SIZE = 40


def spt_score(responses: Mapping[int, str], key: Sequence[str]) -> float:
    """Percent correct on a word-identification sheet.

    ``key`` holds the 40 answer words indexed by video number; ``responses``
    maps video index -> guess. Matching is case-insensitive and missing
    guesses score zero, so results are always multiples of 2.5.
    """
    if len(key) != SPT_KEY_SIZE:
        raise ValueError(f"answer key must have exactly {SPT_KEY_SIZE} words")
    correct = sum(
        1
        for i, answer in enumerate(key)
        if str(responses.get(i, "")).strip().lower() == answer.strip().lower()
    )
    return 100.0 * correct / SPT_KEY_SIZE


def levenshtein(a: Sequence, b: Sequence) -> int:
    """Minimum number of single-element insertions, deletions, and
    substitutions (one unit each) transforming ``a`` into ``b``."""
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, item_a in enumerate(a, start=1):
        current = [i]
        for j, item_b in enumerate(b, start=1):
            cost = 0 if item_a == item_b else 1
            current.append(
                min(previous[j] + 1, current[j - 1] + 1, previous[j - 1] + cost)
            )
        previous = current
    return previous[-1]


@dataclass(frozen=True)
class ErrorReport:
    word_error: int
    char_error: int
    normalized_char_error: float
    initial_phoneme_correct: bool | None


def transcription_errors(
    reference: str, hypothesis: str, lexicon: Lexicon
) -> ErrorReport:
    """Levenshtein error measures between a reference sentence and an
    automatic transcription of it.

    Both sentences are lowercased first so capitalisation is not penalised.
    Word error counts token-level edits (whitespace tokenisation); character
    error counts character edits and is also normalised by the reference
    length. ``initial_phoneme_correct`` compares the first phoneme of each
    sentence's first word via the lexicon; it is None when either first
    word is missing from the lexicon (the other measures are still valid).
    """
    ref = reference.strip().lower()
    hyp = hypothesis.strip().lower()
    ref_words = ref.split()
    hyp_words = hyp.split()
    word_error = levenshtein(ref_words, hyp_words)
    char_error = levenshtein(ref, hyp)
    normalized = char_error / len(ref) if ref else float(char_error)
    initial_ok: bool | None = None
    if ref_words and hyp_words:
        try:
            ref_first = pronounce(ref_words[0], lexicon)[0]
            hyp_first = pronounce(hyp_words[0], lexicon)[0]
            initial_ok = ref_first == hyp_first
        except UnknownWordError:
            initial_ok = None
    return ErrorReport(word_error, char_error, normalized, initial_ok)


@dataclass(frozen=True)
class CorpusReport:
    n_pairs: int
    mean_word_error: float
    mean_normalized_char_error: float
    initial_phoneme_accuracy: float


def corpus_errors(
    pairs: Sequence[tuple[str, str]], lexicon: Lexicon
) -> CorpusReport:
    """Arithmetic means of the per-sentence error measures."""
    if not pairs:
        raise EmptyCorpusError("no sentence pairs to score")
    reports = [transcription_errors(ref, hyp, lexicon) for ref, hyp in pairs]
    return CorpusReport(
        n_pairs=len(reports),
        mean_word_error=sum(r.word_error for r in reports) / len(reports),
        mean_normalized_char_error=sum(r.normalized_char_error for r in reports)
        / len(reports),
        initial_phoneme_accuracy=sum(
            1 for r in reports if r.initial_phoneme_correct is True
        )
        / len(reports),
    )


def parse_corpus(text: str) -> list[tuple[str, str]]:
    """Parse a corpus file of alternating ``REF:`` and ``HYP:`` lines."""
    pairs: list[tuple[str, str]] = []
    pending_ref: str | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.upper().startswith("REF:"):
            if pending_ref is not None:
                raise CorpusParseError("REF without a following HYP", line_no)
            pending_ref = line[4:].strip()
        elif line.upper().startswith("HYP:"):
            if pending_ref is None:
                raise CorpusParseError("HYP without a preceding REF", line_no)
            pairs.append((pending_ref, line[4:].strip()))
            pending_ref = None
        else:
            raise CorpusParseError("expected a REF: or HYP: line", line_no)
    if pending_ref is not None:
        raise CorpusParseError("trailing REF without a HYP", line_no)
    return pairs
