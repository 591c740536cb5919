import pytest

from speechpractice import load_default_lexicon
from speechpractice.store import ConsentRecord, init_store


@pytest.fixture(scope="session")
def lexicon():
    return load_default_lexicon()


@pytest.fixture
def store(tmp_path):
    s = init_store(tmp_path / "library")
    yield s
    s.close()


@pytest.fixture
def populated_store(store, lexicon):
    """Store with one consented speaker and a clip for every seed word."""
    speaker_id = store.add_speaker("John", "Smith", ConsentRecord(True, True, True))
    for word in store.list_words():
        store.add_video(speaker_id, word.id, b"\x1a\x45payload" + word.text.encode())
    return store, speaker_id
