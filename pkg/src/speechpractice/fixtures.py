"""Synthetic desk-scale fixtures for the replication suites.

Human-study outcomes cannot be reproduced without humans; these fixtures
rebuild the *mechanical* numbers instead: detection logs with a perfect or
silent responder, and practice logs matching the deployment participants'
session/trial/correct counts.
"""

from __future__ import annotations

import random
from datetime import datetime, timedelta

from .metrics import ResponseTrial
from .practice import SessionRecord, Trial

# participant -> (sessions, trials, correct, incorrect)
PARTICIPANT_SUMMARY: dict[str, tuple[int, int, int, int]] = {
    "P1": (14, 76, 62, 14),
    "P2": (72, 706, 462, 244),
    "P3": (43, 367, 234, 133),
}

F1_TRIAL_COUNT = 36
F1_TARGET_RATIO = 1 / 3
F1_EXCLUDE = 9


def make_detection_log(
    responder: str = "perfect", seed: int = 0, n_trials: int = F1_TRIAL_COUNT
) -> list[ResponseTrial]:
    """A detection log with targets in one third of the trials.

    ``responder`` is "perfect" (hits every target, never false-alarms),
    "never" (no responses at all), or "random".
    """
    rng = random.Random(seed)
    n_targets = round(n_trials * F1_TARGET_RATIO)
    flags = [True] * n_targets + [False] * (n_trials - n_targets)
    rng.shuffle(flags)
    trials = []
    for is_target in flags:
        if responder == "perfect":
            responded = is_target
        elif responder == "never":
            responded = False
        elif responder == "random":
            responded = rng.random() < 0.5
        else:
            raise ValueError(f"unknown responder {responder!r}")
        trials.append(ResponseTrial(is_target, responded))
    return trials


def _split_sizes(n_sessions: int, n_trials: int) -> list[int]:
    """Session sizes within the one-to-ten bound summing to n_trials."""
    if not n_sessions <= n_trials <= n_sessions * 10:
        raise ValueError("trial total not reachable with 1..10 trials per session")
    sizes = [1] * n_sessions
    remaining = n_trials - n_sessions
    for i in range(n_sessions):
        extra = min(9, remaining)
        sizes[i] += extra
        remaining -= extra
        if remaining == 0:
            break
    return sizes


def make_practice_log(
    participant: str,
    n_sessions: int,
    n_trials: int,
    n_correct: int,
    start: datetime | None = None,
) -> list[SessionRecord]:
    """Session records matching the given aggregate counts exactly."""
    start = start or datetime(2017, 1, 9, 10, 0, 0)
    sizes = _split_sizes(n_sessions, n_trials)
    correct_left = n_correct
    records = []
    for s, size in enumerate(sizes):
        at = start + timedelta(hours=s)
        trials = []
        for i in range(size):
            correct = correct_left > 0
            if correct:
                correct_left -= 1
            trials.append(
                Trial(
                    index=i,
                    video_id=1,
                    correct_word="Bat",
                    chosen_word="Bat" if correct else "Mat",
                    correct=correct,
                    answered_at=at,
                )
            )
        records.append(
            SessionRecord(
                id=f"{participant}-{s:03d}",
                at=at,
                speakers_label="All Speakers",
                lipshapes_label="P/B/M",
                audio=False,
                trials=tuple(trials),
            )
        )
    if correct_left:
        raise ValueError("more correct answers than trials")
    return records
