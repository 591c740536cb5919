"""Library persistence: seeding, consent gate, cascades, integrity."""

import os
import random

import pytest

from speechpractice.errors import (
    ConsentIncompleteError,
    DuplicateLipshapeError,
    DuplicateWordError,
    MissingSpeakerError,
    MissingVideoError,
    MissingWordError,
    StoreIOError,
    ValidationFailedError,
)
from speechpractice.store import (
    DEFAULT_LIPSHAPES,
    DEFAULT_WORDS,
    ConsentRecord,
    LibraryStore,
    init_store,
)

FULL = ConsentRecord(True, True, True)


class TestSeeding:
    def test_fresh_store_seeds_defaults(self, store):
        shapes = store.list_lipshapes()
        assert [s.name for s in shapes] == [
            "P/B/M", "S/D/T", "K/G/N", "Ch/Sh/J", "L/N/K", "Z/T/S",
        ]
        assert all(s.word_count == 3 for s in shapes)
        assert len(store.list_words()) == 18
        assert store.list_videos() == []

    def test_seed_words_match_their_lipshape(self, store, lexicon):
        from speechpractice.phonemes import validate_word_for_lipshape

        for shape in store.list_lipshapes():
            for word in store.list_words(shape.id):
                assert (
                    validate_word_for_lipshape(word.text, shape.as_lipshape(), lexicon)
                    == []
                ), word.text

    def test_reopen_does_not_reseed(self, tmp_path):
        root = tmp_path / "lib"
        s1 = init_store(root)
        s1.close()
        s2 = init_store(root)
        assert len(s2.list_words()) == 18
        s2.close()

    def test_unwritable_path(self, tmp_path):
        # a path under a regular file can never be created
        blocker = tmp_path / "blocker"
        blocker.write_text("not a directory")
        with pytest.raises(StoreIOError):
            init_store(blocker / "lib")


class TestSpeakers:
    def test_add_with_full_consent(self, store):
        speaker_id = store.add_speaker("John", "Smith", FULL)
        speaker = store.get_speaker(speaker_id)
        assert speaker.name == "John Smith"

    @pytest.mark.parametrize(
        "consent",
        [
            ConsentRecord(False, True, True),
            ConsentRecord(True, False, True),
            ConsentRecord(True, True, False),
            ConsentRecord(),
        ],
    )
    def test_partial_consent_cancelled(self, store, consent):
        with pytest.raises(ConsentIncompleteError):
            store.add_speaker("Jane", "Doe", consent)
        assert store.list_speakers() == []

    def test_duplicate_names_allowed(self, store):
        a = store.add_speaker("John", "Smith", FULL)
        b = store.add_speaker("John", "Smith", FULL)
        assert a != b

    def test_delete_cascades(self, populated_store):
        store, speaker_id = populated_store
        n = len(store.list_videos(speaker_id=speaker_id))
        assert n == 18
        summary = store.delete_speaker(speaker_id)
        assert summary.videos_deleted == n
        assert store.list_videos() == []
        assert not list(store.media_dir.iterdir())

    def test_delete_missing(self, store):
        with pytest.raises(MissingSpeakerError):
            store.delete_speaker(999)


class TestWords:
    def test_add_valid(self, store, lexicon):
        shape = store.get_lipshape(name="P/B/M")
        word_id = store.add_word(shape.id, "Puddle", lexicon)
        assert store.get_word(word_id).text == "Puddle"

    def test_add_invalid(self, store, lexicon):
        shape = store.get_lipshape(name="P/B/M")
        with pytest.raises(ValidationFailedError) as err:
            store.add_word(shape.id, "Sat", lexicon)
        assert err.value.violations == ["initial-phoneme"]

    def test_duplicate_in_lipshape(self, store, lexicon):
        shape = store.get_lipshape(name="P/B/M")
        with pytest.raises(DuplicateWordError):
            store.add_word(shape.id, "Pat", lexicon)

    def test_same_word_in_other_lipshape(self, store, lexicon):
        # Tone is seeded under Z/T/S; S/D/T also accepts T-initial words
        sdt = store.get_lipshape(name="S/D/T")
        word_id = store.add_word(sdt.id, "Tone", lexicon)
        assert store.get_word(word_id).lipshape == "S/D/T"

    def test_delete_cascades(self, populated_store):
        store, _ = populated_store
        bat = store.find_word("Bat")
        summary = store.delete_word(bat.id)
        assert summary.videos_deleted == 1
        with pytest.raises(MissingWordError):
            store.get_word(bat.id)

    def test_delete_twice(self, store):
        word = store.find_word("Bat")
        store.delete_word(word.id)
        with pytest.raises(MissingWordError):
            store.delete_word(word.id)


class TestVideos:
    def test_add_tags_with_words_lipshape(self, store):
        sid = store.add_speaker("John", "Smith", FULL)
        bat = store.find_word("Bat")
        vid = store.add_video(sid, bat.id, b"payload")
        video = store.get_video(vid)
        assert video.lipshape == "P/B/M"
        assert store.media_path(vid).read_bytes() == b"payload"

    def test_missing_refs(self, store):
        sid = store.add_speaker("John", "Smith", FULL)
        bat = store.find_word("Bat")
        with pytest.raises(MissingSpeakerError):
            store.add_video(999, bat.id, b"x")
        with pytest.raises(MissingWordError):
            store.add_video(sid, 999, b"x")

    def test_empty_payload(self, store):
        sid = store.add_speaker("John", "Smith", FULL)
        bat = store.find_word("Bat")
        with pytest.raises(StoreIOError):
            store.add_video(sid, bat.id, b"")

    def test_retag_within_lipshape(self, store):
        sid = store.add_speaker("John", "Smith", FULL)
        bat, mat = store.find_word("Bat"), store.find_word("Mat")
        vid = store.add_video(sid, bat.id, b"x")
        video = store.edit_video(vid, word_id=mat.id)
        assert video.word == "Mat"
        assert video.lipshape == "P/B/M"

    def test_retag_across_lipshapes(self, store):
        sid = store.add_speaker("John", "Smith", FULL)
        bat, sun = store.find_word("Bat"), store.find_word("Sun")
        vid = store.add_video(sid, bat.id, b"x")
        video = store.edit_video(vid, word_id=sun.id)
        assert video.lipshape == "S/D/T"

    def test_delete_removes_media(self, store):
        sid = store.add_speaker("John", "Smith", FULL)
        bat = store.find_word("Bat")
        vid = store.add_video(sid, bat.id, b"x")
        path = store.media_path(vid)
        store.delete_video(vid)
        assert not path.exists()
        with pytest.raises(MissingVideoError):
            store.get_video(vid)

    def test_counts_advertised_match_rows(self, populated_store):
        store, speaker_id = populated_store
        for word in store.list_words():
            assert word.video_count == len(store.list_videos(word_id=word.id))
        speaker = store.get_speaker(speaker_id)
        assert speaker.video_count == len(store.list_videos(speaker_id=speaker_id))

    def test_filtered_listing(self, populated_store):
        store, speaker_id = populated_store
        other = store.add_speaker("Jane", "Doe", FULL)
        bat = store.find_word("Bat")
        store.add_video(other, bat.id, b"y")
        mine = store.list_videos(speaker_id=other)
        assert [v.speaker_id for v in mine] == [other]
        bats = store.list_videos(word_id=bat.id)
        assert {v.word for v in bats} == {"Bat"}


class TestLipshapes:
    def test_add_custom(self, store):
        new_id = store.add_lipshape("F/V", {"F", "V"})
        assert store.get_lipshape(new_id).name == "F/V"

    def test_duplicate_rejected(self, store):
        with pytest.raises(DuplicateLipshapeError):
            store.add_lipshape("P/B/M", {"P", "B", "M"})

    def test_non_consonant_rejected(self, store):
        with pytest.raises(ValueError):
            store.add_lipshape("bad", {"AE"})


class TestIntegrityUnderRandomOps:
    def check_invariants(self, store):
        words = {w.id for w in store.list_words()}
        speakers = {s.id for s in store.list_speakers()}
        videos = store.list_videos()
        for video in videos:
            assert video.word_id in words
            assert video.speaker_id in speakers
            assert (store.media_dir / video.path).exists()
        on_disk = {p.name for p in store.media_dir.iterdir()}
        assert on_disk == {v.path for v in videos}

    def test_random_operation_sequences(self, store, lexicon):
        rng = random.Random(20170301)
        candidate_words = [w.capitalize() for w in lexicon.words()]
        for step in range(400):
            op = rng.random()
            words = store.list_words()
            speakers = store.list_speakers()
            videos = store.list_videos()
            try:
                if op < 0.2:
                    store.add_speaker("Speaker", str(step), FULL)
                elif op < 0.35 and words:
                    shape = rng.choice(store.list_lipshapes())
                    store.add_word(shape.id, rng.choice(candidate_words), lexicon)
                elif op < 0.65 and words and speakers:
                    store.add_video(
                        rng.choice(speakers).id,
                        rng.choice(words).id,
                        os.urandom(rng.randint(1, 64)),
                    )
                elif op < 0.75 and videos:
                    other_word = rng.choice(words)
                    store.edit_video(rng.choice(videos).id, word_id=other_word.id)
                elif op < 0.85 and videos:
                    store.delete_video(rng.choice(videos).id)
                elif op < 0.93 and words:
                    store.delete_word(rng.choice(words).id)
                elif speakers:
                    store.delete_speaker(rng.choice(speakers).id)
            except (ValidationFailedError, DuplicateWordError):
                pass
            if step % 40 == 0:
                self.check_invariants(store)
        self.check_invariants(store)
        for speaker in store.list_speakers():
            assert speaker.granted_at  # consent stored only when complete


class TestArchive:
    def test_export_import_roundtrip(self, populated_store, tmp_path):
        store, speaker_id = populated_store
        archive = tmp_path / "backup.zip"
        store.export_archive(archive)

        restored = init_store(tmp_path / "restored")
        restored.import_archive(archive)
        assert len(restored.list_words()) == len(store.list_words())
        assert len(restored.list_videos()) == len(store.list_videos())
        assert len(restored.list_speakers()) == len(store.list_speakers())
        video = restored.list_videos()[0]
        assert (restored.media_dir / video.path).exists()
        restored.close()
