"""Lipshape quiz and word drill: session planning, scoring, statistics,
and per-speaker confusion reports.

Planning is pure given a library view and a seed, so identical inputs
always produce identical sessions.
"""

from __future__ import annotations

import csv
import io
import random
import uuid
from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    AlreadyAnsweredError,
    ChoiceNotOfferedError,
    IncompleteSessionError,
    InsufficientDistractorsError,
    InsufficientVideosError,
    InvalidConfigError,
    InvalidIndexError,
    NoVideosForWordError,
    SpeakerMismatchError,
)

MODE_LIPSHAPE = "lipshape"
MODE_WORD = "word"
MIN_TRIALS, MAX_TRIALS = 1, 10

ALL_LIPSHAPES_LABEL = "All Lipshapes"
ALL_SPEAKERS_LABEL = "All Speakers"


@dataclass(frozen=True)
class SpeakerInfo:
    id: int
    name: str


@dataclass(frozen=True)
class WordInfo:
    text: str
    lipshape: str


@dataclass(frozen=True)
class VideoInfo:
    id: int
    word: str
    lipshape: str
    speaker_id: int


@dataclass(frozen=True)
class LibraryView:
    """Read-only snapshot of the library, in recording order."""

    words: tuple[WordInfo, ...]
    videos: tuple[VideoInfo, ...]
    speakers: tuple[SpeakerInfo, ...]

    def speaker_name(self, speaker_id: int) -> str:
        for speaker in self.speakers:
            if speaker.id == speaker_id:
                return speaker.name
        return f"speaker {speaker_id}"

    def lipshape_of_word(self, text: str) -> str | None:
        for word in self.words:
            if word.text.lower() == text.lower():
                return word.lipshape
        return None

    def video(self, video_id: int) -> VideoInfo | None:
        for video in self.videos:
            if video.id == video_id:
                return video
        return None


@dataclass(frozen=True)
class PracticeConfig:
    """Session parameters; lipshape/speaker of None mean "all"."""

    mode: str = MODE_LIPSHAPE
    lipshape: str | None = None
    word: str | None = None
    speaker: int | None = None
    audio: bool = True
    trial_count: int = 10

    def __post_init__(self):
        if self.mode not in (MODE_LIPSHAPE, MODE_WORD):
            raise InvalidConfigError(f"unknown practice mode {self.mode!r}")
        if self.mode == MODE_LIPSHAPE and not (
            MIN_TRIALS <= self.trial_count <= MAX_TRIALS
        ):
            raise InvalidConfigError(
                f"trial_count must be between {MIN_TRIALS} and {MAX_TRIALS}"
            )
        if self.mode == MODE_WORD and not self.word:
            raise InvalidConfigError("word mode needs a word selector")


@dataclass(frozen=True)
class PlannedTrial:
    index: int
    video_id: int
    correct_word: str
    choices: tuple[str, str, str]


@dataclass(frozen=True)
class SessionPlan:
    id: str
    config: PracticeConfig
    trials: tuple[PlannedTrial, ...]
    lipshapes_label: str
    speakers_label: str


@dataclass(frozen=True)
class Trial:
    index: int
    video_id: int
    correct_word: str
    chosen_word: str
    correct: bool
    answered_at: datetime


@dataclass(frozen=True)
class SessionRecord:
    id: str
    at: datetime
    speakers_label: str
    lipshapes_label: str
    audio: bool
    trials: tuple[Trial, ...]

    @property
    def n_correct(self) -> int:
        return sum(1 for t in self.trials if t.correct)

    @property
    def n_incorrect(self) -> int:
        return len(self.trials) - self.n_correct


def _eligible_videos(config: PracticeConfig, library: LibraryView) -> list[VideoInfo]:
    videos = [
        v
        for v in library.videos
        if (config.lipshape is None or v.lipshape == config.lipshape)
        and (config.speaker is None or v.speaker_id == config.speaker)
    ]
    return videos


def _distractor_pool(
    config: PracticeConfig, library: LibraryView, correct_word: str
) -> list[str]:
    if config.lipshape is None:
        pool = {w.text for w in library.words}
    else:
        pool = {w.text for w in library.words if w.lipshape == config.lipshape}
    pool.discard(correct_word)
    return sorted(pool)


def plan_lipshape_session(
    config: PracticeConfig, library: LibraryView, seed: int | None = None
) -> SessionPlan:
    """Draw a seeded multiple-choice session.

    Videos are drawn with replacement (consecutive duplicates are re-drawn
    once when the pool allows). Distractors come from the selected lipshape
    when one is set, otherwise from the whole word library, which makes the
    all-lipshapes variant easier.
    """
    if config.mode != MODE_LIPSHAPE:
        raise InvalidConfigError("config is not for lipshape practice")
    rng = random.Random(seed)
    videos = _eligible_videos(config, library)
    if not videos:
        raise InsufficientVideosError(
            "not enough videos in the library for this session"
        )
    trials: list[PlannedTrial] = []
    previous: VideoInfo | None = None
    for index in range(config.trial_count):
        video = rng.choice(videos)
        if previous is not None and video.id == previous.id and len(videos) > 1:
            video = rng.choice(videos)
        previous = video
        pool = _distractor_pool(config, library, video.word)
        if len(pool) < 2:
            raise InsufficientDistractorsError(
                f"need 2 distractors for {video.word!r}, found {len(pool)}"
            )
        choices = [video.word] + rng.sample(pool, 2)
        rng.shuffle(choices)
        trials.append(
            PlannedTrial(index, video.id, video.word, tuple(choices))
        )
    return SessionPlan(
        id=str(uuid.UUID(int=rng.getrandbits(128), version=4)),
        config=config,
        trials=tuple(trials),
        lipshapes_label=config.lipshape or ALL_LIPSHAPES_LABEL,
        speakers_label=(
            library.speaker_name(config.speaker)
            if config.speaker is not None
            else ALL_SPEAKERS_LABEL
        ),
    )


def plan_word_session(config: PracticeConfig, library: LibraryView) -> list[int]:
    """All video ids for the selected word, in recording order."""
    if config.mode != MODE_WORD:
        raise InvalidConfigError("config is not for word practice")
    ids = [
        v.id
        for v in library.videos
        if v.word.lower() == config.word.lower()
        and (config.speaker is None or v.speaker_id == config.speaker)
    ]
    if not ids:
        raise NoVideosForWordError(f"no videos recorded for {config.word!r}")
    return ids


def answer_trial(
    plan: SessionPlan,
    answered: Sequence[Trial],
    index: int,
    choice: str,
    answered_at: datetime | None = None,
) -> Trial:
    """Score one answer; the caller accumulates the returned trials."""
    if not 0 <= index < len(plan.trials):
        raise InvalidIndexError(f"trial index {index} out of range")
    planned = plan.trials[index]
    if choice not in planned.choices:
        raise ChoiceNotOfferedError(f"{choice!r} was not one of the choices")
    if any(t.index == index for t in answered):
        raise AlreadyAnsweredError(f"trial {index} was already answered")
    return Trial(
        index=index,
        video_id=planned.video_id,
        correct_word=planned.correct_word,
        chosen_word=choice,
        correct=choice == planned.correct_word,
        answered_at=answered_at or datetime.now(),
    )


def finish_session(
    plan: SessionPlan, trials: Sequence[Trial], clock: datetime | None = None
) -> SessionRecord:
    """Close a session once every trial has exactly one answer."""
    indices = sorted(t.index for t in trials)
    if indices != list(range(len(plan.trials))):
        raise IncompleteSessionError(
            f"answered {len(trials)} of {len(plan.trials)} trials"
        )
    ordered = tuple(sorted(trials, key=lambda t: t.index))
    return SessionRecord(
        id=plan.id,
        at=clock or datetime.now(),
        speakers_label=plan.speakers_label,
        lipshapes_label=plan.lipshapes_label,
        audio=plan.config.audio,
        trials=ordered,
    )


@dataclass(frozen=True)
class SummaryRow:
    session_id: str
    date: str
    speakers: str
    lipshapes: str
    audio: bool
    n_correct: int
    n_incorrect: int


@dataclass(frozen=True)
class SessionSummary:
    rows: tuple[SummaryRow, ...]
    n_sessions: int
    n_trials: int
    n_correct: int
    n_incorrect: int


def summarize_sessions(records: Iterable[SessionRecord]) -> SessionSummary:
    rows = []
    n_trials = n_correct = 0
    for record in records:
        rows.append(
            SummaryRow(
                session_id=record.id,
                date=record.at.isoformat(),
                speakers=record.speakers_label,
                lipshapes=record.lipshapes_label,
                audio=record.audio,
                n_correct=record.n_correct,
                n_incorrect=record.n_incorrect,
            )
        )
        n_trials += len(record.trials)
        n_correct += record.n_correct
    return SessionSummary(
        rows=tuple(rows),
        n_sessions=len(rows),
        n_trials=n_trials,
        n_correct=n_correct,
        n_incorrect=n_trials - n_correct,
    )


@dataclass(frozen=True)
class ConfusionReport:
    speaker_id: int
    counts: Mapping[tuple[str, str], int]
    per_word_accuracy: Mapping[str, float]
    per_lipshape_accuracy: Mapping[str, float]


def confusion_report(
    trials: Sequence[Trial], speaker_id: int, library: LibraryView
) -> ConfusionReport:
    """Aggregate (correct word, chosen word) counts for one speaker.

    Diagonal entries are correct answers; per-word accuracy is the diagonal
    over the row sum, and per-lipshape accuracy pools the rows of the words
    belonging to each lipshape.
    """
    counts: dict[tuple[str, str], int] = {}
    row_totals: dict[str, int] = {}
    row_correct: dict[str, int] = {}
    for trial in trials:
        video = library.video(trial.video_id)
        if video is None or video.speaker_id != speaker_id:
            raise SpeakerMismatchError(
                f"trial video {trial.video_id} is not by speaker {speaker_id}"
            )
        key = (trial.correct_word, trial.chosen_word)
        counts[key] = counts.get(key, 0) + 1
        row_totals[trial.correct_word] = row_totals.get(trial.correct_word, 0) + 1
        if trial.correct:
            row_correct[trial.correct_word] = (
                row_correct.get(trial.correct_word, 0) + 1
            )
    per_word = {
        word: row_correct.get(word, 0) / total for word, total in row_totals.items()
    }
    shape_totals: dict[str, int] = {}
    shape_correct: dict[str, int] = {}
    for word, total in row_totals.items():
        lipshape = library.lipshape_of_word(word) or "?"
        shape_totals[lipshape] = shape_totals.get(lipshape, 0) + total
        shape_correct[lipshape] = shape_correct.get(lipshape, 0) + row_correct.get(
            word, 0
        )
    per_lipshape = {
        shape: shape_correct[shape] / total for shape, total in shape_totals.items()
    }
    return ConfusionReport(speaker_id, counts, per_word, per_lipshape)


CSV_COLUMNS = (
    "session_id",
    "date",
    "speakers",
    "lipshapes",
    "audio",
    "trial_index",
    "video_id",
    "correct_word",
    "chosen_word",
    "result",
)


def sessions_to_csv(records: Iterable[SessionRecord]) -> str:
    """One row per trial, comma-separated, with a header line."""
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(CSV_COLUMNS)
    for record in records:
        for trial in record.trials:
            writer.writerow(
                [
                    record.id,
                    record.at.isoformat(),
                    record.speakers_label,
                    record.lipshapes_label,
                    "on" if record.audio else "off",
                    trial.index,
                    trial.video_id,
                    trial.correct_word,
                    trial.chosen_word,
                    "correct" if trial.correct else "incorrect",
                ]
            )
    return out.getvalue()


def sessions_from_csv(text: str) -> list[SessionRecord]:
    """Inverse of :func:`sessions_to_csv` (used by replication fixtures)."""
    reader = csv.DictReader(io.StringIO(text))
    grouped: dict[str, dict] = {}
    for row in reader:
        info = grouped.setdefault(
            row["session_id"],
            {
                "at": datetime.fromisoformat(row["date"]),
                "speakers": row["speakers"],
                "lipshapes": row["lipshapes"],
                "audio": row["audio"] == "on",
                "trials": [],
            },
        )
        info["trials"].append(
            Trial(
                index=int(row["trial_index"]),
                video_id=int(row["video_id"]),
                correct_word=row["correct_word"],
                chosen_word=row["chosen_word"],
                correct=row["result"] == "correct",
                answered_at=info["at"],
            )
        )
    return [
        SessionRecord(
            id=session_id,
            at=info["at"],
            speakers_label=info["speakers"],
            lipshapes_label=info["lipshapes"],
            audio=info["audio"],
            trials=tuple(sorted(info["trials"], key=lambda t: t.index)),
        )
        for session_id, info in grouped.items()
    ]


Responder = Callable[[PlannedTrial], str]


def perfect_responder(trial: PlannedTrial) -> str:
    return trial.correct_word


def random_responder(seed: int | None = None) -> Responder:
    rng = random.Random(seed)

    def respond(trial: PlannedTrial) -> str:
        return rng.choice(trial.choices)

    return respond


def confusion_responder(
    weights: Mapping[tuple[str, str], float], seed: int | None = None
) -> Responder:
    """Answer according to (correct, chosen) weights; unknown rows fall
    back to the correct answer."""
    rng = random.Random(seed)

    def respond(trial: PlannedTrial) -> str:
        options = [
            (choice, weights.get((trial.correct_word, choice), 0.0))
            for choice in trial.choices
        ]
        total = sum(weight for _, weight in options)
        if total <= 0:
            return trial.correct_word
        roll = rng.uniform(0, total)
        acc = 0.0
        for choice, weight in options:
            acc += weight
            if roll <= acc:
                return choice
        return options[-1][0]

    return respond


def run_simulated_session(
    plan: SessionPlan, responder: Responder, clock: datetime | None = None
) -> SessionRecord:
    """Answer every trial with a responder and close the session."""
    trials = [
        answer_trial(plan, [], trial.index, responder(trial), clock)
        for trial in plan.trials
    ]
    return finish_session(plan, trials, clock)
