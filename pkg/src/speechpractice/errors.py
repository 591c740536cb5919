"""Domain error hierarchy.

Every error carries a stable machine ``code`` so the HTTP layer and the CLI
can map failures without string matching on messages.
"""

from __future__ import annotations


class SpeechPracticeError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, *, details=None):
        super().__init__(message)
        self.message = message
        self.details = details


class UnknownSymbolError(SpeechPracticeError):
    code = "unknown-symbol"


class LexiconParseError(SpeechPracticeError):
    code = "parse-error"

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnknownWordError(SpeechPracticeError):
    code = "unknown-word"


class EmptySequenceError(SpeechPracticeError):
    code = "empty-sequence"


class NotAConsonantError(SpeechPracticeError):
    code = "not-a-consonant"


class TranscriptParseError(SpeechPracticeError):
    code = "parse-error"

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class OutOfOrderEventError(SpeechPracticeError):
    code = "out-of-order-event"


class InvalidConfigError(SpeechPracticeError):
    code = "invalid-config"


class InsufficientVideosError(SpeechPracticeError):
    code = "insufficient-videos"


class InsufficientDistractorsError(SpeechPracticeError):
    code = "insufficient-distractors"


class InvalidIndexError(SpeechPracticeError):
    code = "invalid-index"


class ChoiceNotOfferedError(SpeechPracticeError):
    code = "choice-not-offered"


class AlreadyAnsweredError(SpeechPracticeError):
    code = "already-answered"


class IncompleteSessionError(SpeechPracticeError):
    code = "incomplete-session"


class NoVideosForWordError(SpeechPracticeError):
    code = "no-videos-for-word"


class SpeakerMismatchError(SpeechPracticeError):
    code = "speaker-mismatch"


class EmptyLogError(SpeechPracticeError):
    code = "empty-log"


class EmptyCorpusError(SpeechPracticeError):
    code = "empty-corpus"


class CorpusParseError(SpeechPracticeError):
    code = "parse-error"

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ConsentIncompleteError(SpeechPracticeError):
    code = "consent-incomplete"


class ValidationFailedError(SpeechPracticeError):
    code = "validation-failed"

    def __init__(self, message: str, violations):
        super().__init__(message, details=list(violations))
        self.violations = list(violations)


class DuplicateWordError(SpeechPracticeError):
    code = "duplicate-word-in-lipshape"


class DuplicateLipshapeError(SpeechPracticeError):
    code = "duplicate-lipshape"


class MissingSpeakerError(SpeechPracticeError):
    code = "missing-speaker"


class MissingWordError(SpeechPracticeError):
    code = "missing-word"


class MissingVideoError(SpeechPracticeError):
    code = "missing-video"


class MissingLipshapeError(SpeechPracticeError):
    code = "missing-lipshape"


class MissingSessionError(SpeechPracticeError):
    code = "missing-session"


class DuplicateSessionError(SpeechPracticeError):
    code = "duplicate-session"


class StoreIOError(SpeechPracticeError):
    code = "io-failure"


class CorruptStoreError(SpeechPracticeError):
    code = "corrupt-store"
