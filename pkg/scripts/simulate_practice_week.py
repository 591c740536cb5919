#!/usr/bin/env python3
"""Simulate a week of daily quiz practice and print the summary table.

Builds a throwaway library with one speaker and a clip per seed word, runs
several seeded sessions per day with a noisy responder, and prints the
per-session rows plus totals.
"""

import random
import tempfile
from datetime import datetime, timedelta

from speechpractice import practice
from speechpractice.store import ConsentRecord, init_store

DAYS = 7
SESSIONS_PER_DAY = 3


def main(seed: int = 2017) -> None:
    rng = random.Random(seed)
    with tempfile.TemporaryDirectory() as tmp:
        store = init_store(tmp)
        speaker = store.add_speaker("Alex", "Example", ConsentRecord(True, True, True))
        for word in store.list_words():
            store.add_video(speaker, word.id, b"clip:" + word.text.encode())
        view = store.library_view()
        start = datetime(2017, 5, 1, 9, 0)
        for day in range(DAYS):
            for n in range(SESSIONS_PER_DAY):
                shape = rng.choice([s.name for s in store.list_lipshapes()])
                config = practice.PracticeConfig(
                    lipshape=shape, trial_count=rng.randint(3, 10)
                )
                plan = practice.plan_lipshape_session(config, view, rng.getrandbits(32))
                responder = practice.random_responder(rng.getrandbits(32))
                clock = start + timedelta(days=day, hours=n)
                store.save_session(
                    practice.run_simulated_session(plan, responder, clock)
                )
        summary = practice.summarize_sessions(store.list_sessions())
        print(f"{'date':<20} {'lipshape':<10} {'result':>7}")
        for row in summary.rows:
            print(
                f"{row.date:<20.19} {row.lipshapes:<10} "
                f"{row.n_correct:>3}/{row.n_correct + row.n_incorrect}"
            )
        print(
            f"\ntotals: {summary.n_sessions} sessions, {summary.n_trials} trials, "
            f"{summary.n_correct} correct, {summary.n_incorrect} incorrect"
        )
        store.close()


if __name__ == "__main__":
    main()
