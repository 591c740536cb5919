"""Session planning, scoring, statistics, and confusion analytics."""

from datetime import datetime

import pytest
from hypothesis import given, settings, strategies as st

from speechpractice.errors import (
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
from speechpractice.practice import (
    LibraryView,
    PracticeConfig,
    SpeakerInfo,
    Trial,
    VideoInfo,
    WordInfo,
    answer_trial,
    confusion_report,
    finish_session,
    perfect_responder,
    plan_lipshape_session,
    plan_word_session,
    random_responder,
    run_simulated_session,
    sessions_from_csv,
    sessions_to_csv,
    summarize_sessions,
)

CLOCK = datetime(2017, 3, 1, 12, 0, 0)


def library():
    words = [
        WordInfo("Pat", "P/B/M"), WordInfo("Bat", "P/B/M"), WordInfo("Mat", "P/B/M"),
        WordInfo("Puddle", "P/B/M"),
        WordInfo("Sun", "S/D/T"), WordInfo("Done", "S/D/T"), WordInfo("Tonne", "S/D/T"),
    ]
    videos = [
        VideoInfo(1, "Pat", "P/B/M", 1),
        VideoInfo(2, "Bat", "P/B/M", 1),
        VideoInfo(3, "Bat", "P/B/M", 2),
        VideoInfo(4, "Mat", "P/B/M", 2),
        VideoInfo(5, "Sun", "S/D/T", 1),
        VideoInfo(6, "Done", "S/D/T", 2),
    ]
    speakers = [SpeakerInfo(1, "John Smith"), SpeakerInfo(2, "Jane Doe")]
    return LibraryView(tuple(words), tuple(videos), tuple(speakers))


class TestConfig:
    def test_trial_count_bounds(self):
        PracticeConfig(trial_count=1)
        PracticeConfig(trial_count=10)
        for bad in (0, 11, -3):
            with pytest.raises(InvalidConfigError):
                PracticeConfig(trial_count=bad)

    def test_word_mode_needs_word(self):
        with pytest.raises(InvalidConfigError):
            PracticeConfig(mode="word", word=None)

    def test_unknown_mode(self):
        with pytest.raises(InvalidConfigError):
            PracticeConfig(mode="sentence")


class TestPlanLipshape:
    def test_reproducible(self):
        config = PracticeConfig(lipshape="P/B/M", trial_count=10)
        assert plan_lipshape_session(config, library(), 7) == plan_lipshape_session(
            config, library(), 7
        )

    def test_different_seeds_differ(self):
        config = PracticeConfig(lipshape="P/B/M", trial_count=10)
        a = plan_lipshape_session(config, library(), 1)
        b = plan_lipshape_session(config, library(), 2)
        assert a.trials != b.trials

    def test_specific_lipshape_choices_stay_inside(self):
        config = PracticeConfig(lipshape="P/B/M", trial_count=10)
        pbm_words = {"Pat", "Bat", "Mat", "Puddle"}
        for seed in range(50):
            plan = plan_lipshape_session(config, library(), seed)
            for trial in plan.trials:
                assert set(trial.choices) <= pbm_words
                assert trial.correct_word in trial.choices
                assert len(set(trial.choices)) == 3

    def test_all_mode_can_cross_lipshapes(self):
        config = PracticeConfig(lipshape=None, trial_count=10)
        crossed = False
        lib = library()
        shapes = {w.text: w.lipshape for w in lib.words}
        for seed in range(30):
            plan = plan_lipshape_session(config, lib, seed)
            for trial in plan.trials:
                if len({shapes[c] for c in trial.choices}) > 1:
                    crossed = True
        assert crossed

    def test_videos_filtered_by_speaker(self):
        config = PracticeConfig(lipshape="P/B/M", speaker=2, trial_count=10)
        for seed in range(10):
            plan = plan_lipshape_session(config, library(), seed)
            for trial in plan.trials:
                assert trial.video_id in (3, 4)

    def test_empty_library_is_an_error(self):
        config = PracticeConfig(lipshape="Ch/Sh/J", trial_count=3)
        with pytest.raises(InsufficientVideosError):
            plan_lipshape_session(config, library(), 0)

    def test_insufficient_distractors(self):
        lib = LibraryView(
            (WordInfo("Pat", "P/B/M"), WordInfo("Bat", "P/B/M")),
            (VideoInfo(1, "Pat", "P/B/M", 1),),
            (SpeakerInfo(1, "John Smith"),),
        )
        config = PracticeConfig(lipshape="P/B/M", trial_count=1)
        with pytest.raises(InsufficientDistractorsError):
            plan_lipshape_session(config, lib, 0)

    def test_labels(self):
        plan = plan_lipshape_session(
            PracticeConfig(lipshape="P/B/M", speaker=2, trial_count=1), library(), 0
        )
        assert plan.lipshapes_label == "P/B/M"
        assert plan.speakers_label == "Jane Doe"
        plan_all = plan_lipshape_session(
            PracticeConfig(trial_count=1), library(), 0
        )
        assert plan_all.lipshapes_label == "All Lipshapes"
        assert plan_all.speakers_label == "All Speakers"

    def test_audio_flag_copied(self):
        plan = plan_lipshape_session(
            PracticeConfig(lipshape="P/B/M", audio=False, trial_count=1), library(), 0
        )
        assert plan.config.audio is False

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=0, max_value=2**63), st.integers(1, 10))
    def test_soundness_property(self, seed, trials):
        config = PracticeConfig(lipshape="P/B/M", trial_count=trials)
        plan = plan_lipshape_session(config, library(), seed)
        assert len(plan.trials) == trials
        for trial in plan.trials:
            assert len(set(trial.choices)) == 3
            assert trial.correct_word in trial.choices
            assert {"Sun", "Done", "Tonne"}.isdisjoint(trial.choices)


class TestPlanWord:
    def test_all_videos_in_order(self):
        config = PracticeConfig(mode="word", word="Bat", trial_count=1)
        assert plan_word_session(config, library()) == [2, 3]

    def test_specific_speaker(self):
        config = PracticeConfig(mode="word", word="Bat", speaker=2, trial_count=1)
        assert plan_word_session(config, library()) == [3]

    def test_no_videos(self):
        config = PracticeConfig(mode="word", word="Puddle", trial_count=1)
        with pytest.raises(NoVideosForWordError):
            plan_word_session(config, library())


def make_plan(trials=3, seed=0):
    config = PracticeConfig(lipshape="P/B/M", trial_count=trials)
    return plan_lipshape_session(config, library(), seed)


class TestAnswerTrial:
    def test_correct(self):
        plan = make_plan()
        trial = answer_trial(plan, [], 0, plan.trials[0].correct_word, CLOCK)
        assert trial.correct is True

    def test_incorrect(self):
        plan = make_plan()
        wrong = next(
            c for c in plan.trials[0].choices if c != plan.trials[0].correct_word
        )
        trial = answer_trial(plan, [], 0, wrong, CLOCK)
        assert trial.correct is False

    def test_choice_not_offered(self):
        plan = make_plan()
        with pytest.raises(ChoiceNotOfferedError):
            answer_trial(plan, [], 0, "Xylophone", CLOCK)

    def test_invalid_index(self):
        plan = make_plan()
        with pytest.raises(InvalidIndexError):
            answer_trial(plan, [], 3, "Bat", CLOCK)

    def test_already_answered(self):
        plan = make_plan()
        first = answer_trial(plan, [], 0, plan.trials[0].correct_word, CLOCK)
        with pytest.raises(AlreadyAnsweredError):
            answer_trial(plan, [first], 0, plan.trials[0].correct_word, CLOCK)


class TestFinishSession:
    def test_counts(self):
        plan = make_plan(10)
        trials = []
        for i, planned in enumerate(plan.trials):
            choice = (
                planned.correct_word
                if i < 7
                else next(c for c in planned.choices if c != planned.correct_word)
            )
            trials.append(answer_trial(plan, trials, i, choice, CLOCK))
        record = finish_session(plan, trials, CLOCK)
        assert record.n_correct == 7
        assert record.n_incorrect == 3
        assert record.n_correct + record.n_incorrect == len(record.trials)

    def test_single_trial_session(self):
        plan = make_plan(1)
        record = run_simulated_session(plan, perfect_responder, CLOCK)
        assert len(record.trials) == 1

    def test_incomplete(self):
        plan = make_plan(3)
        one = answer_trial(plan, [], 0, plan.trials[0].correct_word, CLOCK)
        with pytest.raises(IncompleteSessionError):
            finish_session(plan, [one], CLOCK)


class TestSummarize:
    def test_empty(self):
        summary = summarize_sessions([])
        assert (summary.n_sessions, summary.n_trials, summary.n_correct,
                summary.n_incorrect) == (0, 0, 0, 0)

    def test_counts_roll_up(self):
        records = [
            run_simulated_session(make_plan(10, seed), perfect_responder, CLOCK)
            for seed in range(3)
        ]
        summary = summarize_sessions(records)
        assert summary.n_sessions == 3
        assert summary.n_trials == 30
        assert summary.n_correct == 30
        assert summary.n_incorrect == 0
        assert summary.rows[0].lipshapes == "P/B/M"


class TestConfusion:
    def trial(self, video_id, correct, chosen):
        return Trial(0, video_id, correct, chosen, correct == chosen, CLOCK)

    def test_all_correct_is_diagonal(self):
        trials = [self.trial(1, "Pat", "Pat"), self.trial(2, "Bat", "Bat")]
        report = confusion_report(trials, 1, library())
        assert report.counts == {("Pat", "Pat"): 1, ("Bat", "Bat"): 1}
        assert report.per_word_accuracy == {"Pat": 1.0, "Bat": 1.0}

    def test_hand_counted_example(self):
        trials = [self.trial(2, "Bat", "Mat"), self.trial(2, "Bat", "Bat")]
        report = confusion_report(trials, 1, library())
        assert report.counts[("Bat", "Mat")] == 1
        assert report.counts[("Bat", "Bat")] == 1
        assert report.per_word_accuracy["Bat"] == 0.5

    def test_per_lipshape_grouping(self):
        trials = [
            self.trial(1, "Pat", "Pat"),
            self.trial(5, "Sun", "Done"),
            self.trial(5, "Sun", "Sun"),
        ]
        report = confusion_report(trials, 1, library())
        assert report.per_lipshape_accuracy["P/B/M"] == 1.0
        assert report.per_lipshape_accuracy["S/D/T"] == 0.5

    def test_speaker_mismatch(self):
        trials = [self.trial(3, "Bat", "Bat")]  # video 3 belongs to speaker 2
        with pytest.raises(SpeakerMismatchError):
            confusion_report(trials, 1, library())

    def test_row_sums_equal_trials_per_word(self):
        trials = [
            self.trial(2, "Bat", "Mat"),
            self.trial(2, "Bat", "Bat"),
            self.trial(1, "Pat", "Pat"),
        ]
        report = confusion_report(trials, 1, library())
        row_sums = {}
        for (correct, _), n in report.counts.items():
            row_sums[correct] = row_sums.get(correct, 0) + n
        assert row_sums == {"Bat": 2, "Pat": 1}


class TestCsvRoundTrip:
    def test_roundtrip(self):
        records = [
            run_simulated_session(make_plan(5, seed), random_responder(seed), CLOCK)
            for seed in range(3)
        ]
        text = sessions_to_csv(records)
        parsed = sessions_from_csv(text)
        assert len(parsed) == 3
        by_id = {r.id: r for r in parsed}
        for record in records:
            restored = by_id[record.id]
            assert restored.n_correct == record.n_correct
            assert restored.lipshapes_label == record.lipshapes_label
            assert [t.chosen_word for t in restored.trials] == [
                t.chosen_word for t in record.trials
            ]

    def test_header(self):
        text = sessions_to_csv([])
        assert text.strip() == (
            "session_id,date,speakers,lipshapes,audio,trial_index,"
            "video_id,correct_word,chosen_word,result"
        )
