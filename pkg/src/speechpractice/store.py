"""Persistent practice library: speakers, lipshapes, words, videos, and
session history in a single SQLite file with a sibling private media
directory.

All mutations are serialized through one lock (single writer); reads take
the same lock and therefore always see consistent snapshots. Speakers are
only ever stored with full consent, and deleting a word or speaker
cascades to its videos and their media files.
"""

from __future__ import annotations

import json
import shutil
import sqlite3
import threading
import uuid
import zipfile
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path

from .errors import (
    ConsentIncompleteError,
    CorruptStoreError,
    DuplicateLipshapeError,
    DuplicateSessionError,
    DuplicateWordError,
    MissingLipshapeError,
    MissingSpeakerError,
    MissingVideoError,
    MissingWordError,
    StoreIOError,
    ValidationFailedError,
)
from .phonemes import Lexicon, Lipshape, validate_word_for_lipshape
from .practice import (
    LibraryView,
    SessionRecord,
    SpeakerInfo,
    Trial,
    VideoInfo,
    WordInfo,
)

# The six lipshapes practiced in class, each seeded with three words whose
# initial consonants all fall inside the group.
DEFAULT_LIPSHAPES: tuple[tuple[str, tuple[str, ...]], ...] = (
    ("P/B/M", ("P", "B", "M")),
    ("S/D/T", ("S", "D", "T")),
    ("K/G/N", ("K", "G", "N")),
    ("Ch/Sh/J", ("CH", "SH", "JH")),
    ("L/N/K", ("L", "N", "K")),
    ("Z/T/S", ("Z", "T", "S")),
)

DEFAULT_WORDS: dict[str, tuple[str, str, str]] = {
    "P/B/M": ("Pat", "Bat", "Mat"),
    "S/D/T": ("Sun", "Done", "Tonne"),
    "K/G/N": ("Kill", "Gill", "Nil"),
    "Ch/Sh/J": ("Chill", "Shill", "Jill"),
    "L/N/K": ("Light", "Night", "Kite"),
    "Z/T/S": ("Zone", "Tone", "Sewn"),
}

_SCHEMA = """
CREATE TABLE IF NOT EXISTS lipshape (
    id INTEGER PRIMARY KEY,
    name TEXT NOT NULL UNIQUE,
    phonemes TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS word (
    id INTEGER PRIMARY KEY,
    text TEXT NOT NULL,
    lipshape_id INTEGER NOT NULL REFERENCES lipshape(id)
);
CREATE TABLE IF NOT EXISTS speaker (
    id INTEGER PRIMARY KEY,
    first_name TEXT NOT NULL,
    last_name TEXT NOT NULL,
    consent_informed INTEGER NOT NULL,
    consent_data INTEGER NOT NULL,
    consent_video INTEGER NOT NULL,
    granted_at TEXT NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS video (
    id INTEGER PRIMARY KEY,
    word_id INTEGER NOT NULL REFERENCES word(id),
    speaker_id INTEGER NOT NULL REFERENCES speaker(id),
    lipshape_id INTEGER NOT NULL REFERENCES lipshape(id),
    path TEXT NOT NULL,
    has_audio INTEGER NOT NULL,
    created_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS session (
    id TEXT PRIMARY KEY,
    at TEXT NOT NULL,
    speakers_label TEXT NOT NULL,
    lipshapes_label TEXT NOT NULL,
    audio INTEGER NOT NULL
);
CREATE TABLE IF NOT EXISTS trial (
    id INTEGER PRIMARY KEY,
    session_id TEXT NOT NULL REFERENCES session(id),
    trial_index INTEGER NOT NULL,
    video_id INTEGER NOT NULL,
    correct_word TEXT NOT NULL,
    chosen_word TEXT NOT NULL,
    result TEXT NOT NULL
);
"""


@dataclass(frozen=True)
class ConsentRecord:
    """The three acknowledgments a speaker must give before being stored."""

    informed_about_project: bool = False
    data_use: bool = False
    video_use: bool = False

    @property
    def complete(self) -> bool:
        return self.informed_about_project and self.data_use and self.video_use


@dataclass(frozen=True)
class SpeakerRow:
    id: int
    first_name: str
    last_name: str
    granted_at: str
    created_at: str
    video_count: int = 0

    @property
    def name(self) -> str:
        return f"{self.first_name} {self.last_name}".strip()


@dataclass(frozen=True)
class LipshapeRow:
    id: int
    name: str
    phonemes: tuple[str, ...]
    word_count: int = 0

    def as_lipshape(self) -> Lipshape:
        return Lipshape(self.name, frozenset(self.phonemes))


@dataclass(frozen=True)
class WordRow:
    id: int
    text: str
    lipshape_id: int
    lipshape: str
    video_count: int = 0


@dataclass(frozen=True)
class VideoRow:
    id: int
    word_id: int
    word: str
    speaker_id: int
    speaker: str
    lipshape_id: int
    lipshape: str
    path: str
    has_audio: bool
    created_at: str


@dataclass(frozen=True)
class DeletionSummary:
    videos_deleted: int
    words_deleted: int = 0


class LibraryStore:
    """Store handle; open with :func:`init_store`."""

    def __init__(self, db_path: Path, media_dir: Path):
        self.db_path = db_path
        self.media_dir = media_dir
        self._lock = threading.RLock()
        try:
            self.media_dir.mkdir(parents=True, exist_ok=True)
            self._conn = sqlite3.connect(str(db_path), check_same_thread=False)
            self._conn.row_factory = sqlite3.Row
            self._conn.executescript(_SCHEMA)
            self._conn.commit()
        except (OSError, sqlite3.OperationalError) as exc:
            raise StoreIOError(f"cannot open store at {db_path}: {exc}") from exc
        except sqlite3.DatabaseError as exc:
            raise CorruptStoreError(f"not a library store: {db_path}") from exc
        self._seed_defaults()

    # -- lifecycle ---------------------------------------------------------

    def _seed_defaults(self) -> None:
        with self._lock:
            count = self._conn.execute("SELECT COUNT(*) FROM lipshape").fetchone()[0]
            if count:
                return
            for name, members in DEFAULT_LIPSHAPES:
                cur = self._conn.execute(
                    "INSERT INTO lipshape (name, phonemes) VALUES (?, ?)",
                    (name, " ".join(members)),
                )
                for text in DEFAULT_WORDS[name]:
                    self._conn.execute(
                        "INSERT INTO word (text, lipshape_id) VALUES (?, ?)",
                        (text, cur.lastrowid),
                    )
            self._conn.commit()

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    # -- lipshapes ---------------------------------------------------------

    def list_lipshapes(self) -> list[LipshapeRow]:
        with self._lock:
            rows = self._conn.execute(
                """SELECT l.id, l.name, l.phonemes,
                          (SELECT COUNT(*) FROM word w WHERE w.lipshape_id = l.id)
                          AS word_count
                   FROM lipshape l ORDER BY l.id"""
            ).fetchall()
        return [
            LipshapeRow(r["id"], r["name"], tuple(r["phonemes"].split()), r["word_count"])
            for r in rows
        ]

    def get_lipshape(self, lipshape_id: int | None = None, name: str | None = None):
        with self._lock:
            if lipshape_id is not None:
                row = self._conn.execute(
                    "SELECT * FROM lipshape WHERE id = ?", (lipshape_id,)
                ).fetchone()
            else:
                row = self._conn.execute(
                    "SELECT * FROM lipshape WHERE name = ?", (name,)
                ).fetchone()
        if row is None:
            raise MissingLipshapeError(f"no such lipshape: {lipshape_id or name}")
        return LipshapeRow(row["id"], row["name"], tuple(row["phonemes"].split()))

    def add_lipshape(self, name: str, member_phonemes) -> int:
        shape = Lipshape(name, frozenset(member_phonemes))
        with self._lock:
            try:
                cur = self._conn.execute(
                    "INSERT INTO lipshape (name, phonemes) VALUES (?, ?)",
                    (shape.name, " ".join(sorted(shape.member_phonemes))),
                )
                self._conn.commit()
            except sqlite3.IntegrityError:
                raise DuplicateLipshapeError(f"lipshape {name!r} already exists")
        return cur.lastrowid

    # -- words -------------------------------------------------------------

    def list_words(self, lipshape_id: int | None = None) -> list[WordRow]:
        query = """SELECT w.id, w.text, w.lipshape_id, l.name AS lipshape,
                          (SELECT COUNT(*) FROM video v WHERE v.word_id = w.id)
                          AS video_count
                   FROM word w JOIN lipshape l ON l.id = w.lipshape_id"""
        params: tuple = ()
        if lipshape_id is not None:
            query += " WHERE w.lipshape_id = ?"
            params = (lipshape_id,)
        query += " ORDER BY w.id"
        with self._lock:
            rows = self._conn.execute(query, params).fetchall()
        return [
            WordRow(
                r["id"], r["text"], r["lipshape_id"], r["lipshape"], r["video_count"]
            )
            for r in rows
        ]

    def get_word(self, word_id: int) -> WordRow:
        with self._lock:
            row = self._conn.execute(
                """SELECT w.id, w.text, w.lipshape_id, l.name AS lipshape
                   FROM word w JOIN lipshape l ON l.id = w.lipshape_id
                   WHERE w.id = ?""",
                (word_id,),
            ).fetchone()
        if row is None:
            raise MissingWordError(f"no such word id: {word_id}")
        return WordRow(row["id"], row["text"], row["lipshape_id"], row["lipshape"])

    def find_word(self, text: str) -> WordRow | None:
        with self._lock:
            row = self._conn.execute(
                """SELECT w.id, w.text, w.lipshape_id, l.name AS lipshape
                   FROM word w JOIN lipshape l ON l.id = w.lipshape_id
                   WHERE lower(w.text) = lower(?) ORDER BY w.id LIMIT 1""",
                (text.strip(),),
            ).fetchone()
        if row is None:
            return None
        return WordRow(row["id"], row["text"], row["lipshape_id"], row["lipshape"])

    def add_word(self, lipshape_id: int, text: str, lexicon: Lexicon) -> int:
        shape_row = self.get_lipshape(lipshape_id)
        text = text.strip()
        violations = validate_word_for_lipshape(text, shape_row.as_lipshape(), lexicon)
        if violations:
            raise ValidationFailedError(
                f"{text!r} is not a valid word for {shape_row.name}", violations
            )
        with self._lock:
            duplicate = self._conn.execute(
                "SELECT 1 FROM word WHERE lipshape_id = ? AND lower(text) = lower(?)",
                (lipshape_id, text),
            ).fetchone()
            if duplicate:
                raise DuplicateWordError(
                    f"{text!r} is already in lipshape {shape_row.name}"
                )
            cur = self._conn.execute(
                "INSERT INTO word (text, lipshape_id) VALUES (?, ?)",
                (text, lipshape_id),
            )
            self._conn.commit()
        return cur.lastrowid

    def delete_word(self, word_id: int) -> DeletionSummary:
        """Remove the word, all of its videos, and their media files."""
        self.get_word(word_id)
        with self._lock:
            paths = [
                r["path"]
                for r in self._conn.execute(
                    "SELECT path FROM video WHERE word_id = ?", (word_id,)
                )
            ]
            self._conn.execute("DELETE FROM video WHERE word_id = ?", (word_id,))
            self._conn.execute("DELETE FROM word WHERE id = ?", (word_id,))
            self._conn.commit()
            self._remove_media(paths)
        return DeletionSummary(videos_deleted=len(paths), words_deleted=1)

    # -- speakers ------------------------------------------------------------

    def list_speakers(self) -> list[SpeakerRow]:
        with self._lock:
            rows = self._conn.execute(
                """SELECT s.*, (SELECT COUNT(*) FROM video v
                                WHERE v.speaker_id = s.id) AS video_count
                   FROM speaker s ORDER BY s.id"""
            ).fetchall()
        return [
            SpeakerRow(
                r["id"],
                r["first_name"],
                r["last_name"],
                r["granted_at"],
                r["created_at"],
                r["video_count"],
            )
            for r in rows
        ]

    def get_speaker(self, speaker_id: int) -> SpeakerRow:
        with self._lock:
            row = self._conn.execute(
                """SELECT s.*, (SELECT COUNT(*) FROM video v
                                WHERE v.speaker_id = s.id) AS video_count
                   FROM speaker s WHERE s.id = ?""",
                (speaker_id,),
            ).fetchone()
        if row is None:
            raise MissingSpeakerError(f"no such speaker id: {speaker_id}")
        return SpeakerRow(
            row["id"],
            row["first_name"],
            row["last_name"],
            row["granted_at"],
            row["created_at"],
            row["video_count"],
        )

    def add_speaker(self, first: str, last: str, consent: ConsentRecord) -> int:
        """Store a speaker only when every consent box is ticked."""
        if not consent.complete:
            raise ConsentIncompleteError(
                "adding the speaker is cancelled: all consent boxes are required"
            )
        now = datetime.now().isoformat()
        with self._lock:
            cur = self._conn.execute(
                """INSERT INTO speaker (first_name, last_name, consent_informed,
                                        consent_data, consent_video, granted_at,
                                        created_at)
                   VALUES (?, ?, 1, 1, 1, ?, ?)""",
                (first.strip(), last.strip(), now, now),
            )
            self._conn.commit()
        return cur.lastrowid

    def delete_speaker(self, speaker_id: int) -> DeletionSummary:
        """Remove the speaker, all of their videos, and the media files."""
        self.get_speaker(speaker_id)
        with self._lock:
            paths = [
                r["path"]
                for r in self._conn.execute(
                    "SELECT path FROM video WHERE speaker_id = ?", (speaker_id,)
                )
            ]
            self._conn.execute("DELETE FROM video WHERE speaker_id = ?", (speaker_id,))
            self._conn.execute("DELETE FROM speaker WHERE id = ?", (speaker_id,))
            self._conn.commit()
            self._remove_media(paths)
        return DeletionSummary(videos_deleted=len(paths))

    # -- videos --------------------------------------------------------------

    def add_video(
        self,
        speaker_id: int,
        word_id: int,
        payload: bytes,
        has_audio: bool = True,
        container: str = "webm",
    ) -> int:
        """Write the media payload into the private directory and record it,
        tagged with the word's lipshape."""
        if not payload:
            raise StoreIOError("empty media payload")
        speaker = self.get_speaker(speaker_id)
        word = self.get_word(word_id)
        name = f"{uuid.uuid4().hex}.{container.lstrip('.') or 'bin'}"
        path = self.media_dir / name
        try:
            path.write_bytes(payload)
        except OSError as exc:
            raise StoreIOError(f"cannot write media file: {exc}") from exc
        with self._lock:
            try:
                cur = self._conn.execute(
                    """INSERT INTO video (word_id, speaker_id, lipshape_id, path,
                                          has_audio, created_at)
                       VALUES (?, ?, ?, ?, ?, ?)""",
                    (
                        word.id,
                        speaker.id,
                        word.lipshape_id,
                        name,
                        int(has_audio),
                        datetime.now().isoformat(),
                    ),
                )
                self._conn.commit()
            except sqlite3.DatabaseError:
                path.unlink(missing_ok=True)
                raise
        return cur.lastrowid

    def _video_row(self, row) -> VideoRow:
        return VideoRow(
            id=row["id"],
            word_id=row["word_id"],
            word=row["word"],
            speaker_id=row["speaker_id"],
            speaker=(row["first_name"] + " " + row["last_name"]).strip(),
            lipshape_id=row["lipshape_id"],
            lipshape=row["lipshape"],
            path=row["path"],
            has_audio=bool(row["has_audio"]),
            created_at=row["created_at"],
        )

    _VIDEO_QUERY = """
        SELECT v.id, v.word_id, v.speaker_id, v.lipshape_id, v.path,
               v.has_audio, v.created_at, w.text AS word, l.name AS lipshape,
               s.first_name, s.last_name
        FROM video v
        JOIN word w ON w.id = v.word_id
        JOIN lipshape l ON l.id = v.lipshape_id
        JOIN speaker s ON s.id = v.speaker_id
    """

    def list_videos(
        self,
        word_id: int | None = None,
        speaker_id: int | None = None,
        lipshape_id: int | None = None,
    ) -> list[VideoRow]:
        clauses, params = [], []
        if word_id is not None:
            clauses.append("v.word_id = ?")
            params.append(word_id)
        if speaker_id is not None:
            clauses.append("v.speaker_id = ?")
            params.append(speaker_id)
        if lipshape_id is not None:
            clauses.append("v.lipshape_id = ?")
            params.append(lipshape_id)
        query = self._VIDEO_QUERY
        if clauses:
            query += " WHERE " + " AND ".join(clauses)
        query += " ORDER BY v.id"
        with self._lock:
            rows = self._conn.execute(query, params).fetchall()
        return [self._video_row(r) for r in rows]

    def get_video(self, video_id: int) -> VideoRow:
        with self._lock:
            row = self._conn.execute(
                self._VIDEO_QUERY + " WHERE v.id = ?", (video_id,)
            ).fetchone()
        if row is None:
            raise MissingVideoError(f"no such video id: {video_id}")
        return self._video_row(row)

    def media_path(self, video_id: int) -> Path:
        return self.media_dir / self.get_video(video_id).path

    def edit_video(
        self,
        video_id: int,
        word_id: int | None = None,
        speaker_id: int | None = None,
        has_audio: bool | None = None,
    ) -> VideoRow:
        """Retag a video; the lipshape follows the (possibly new) word."""
        video = self.get_video(video_id)
        word = self.get_word(word_id if word_id is not None else video.word_id)
        speaker = self.get_speaker(
            speaker_id if speaker_id is not None else video.speaker_id
        )
        with self._lock:
            self._conn.execute(
                """UPDATE video SET word_id = ?, speaker_id = ?, lipshape_id = ?,
                                    has_audio = ?
                   WHERE id = ?""",
                (
                    word.id,
                    speaker.id,
                    word.lipshape_id,
                    int(has_audio if has_audio is not None else video.has_audio),
                    video_id,
                ),
            )
            self._conn.commit()
        return self.get_video(video_id)

    def delete_video(self, video_id: int) -> DeletionSummary:
        video = self.get_video(video_id)
        with self._lock:
            self._conn.execute("DELETE FROM video WHERE id = ?", (video_id,))
            self._conn.commit()
            self._remove_media([video.path])
        return DeletionSummary(videos_deleted=1)

    def _remove_media(self, names) -> None:
        for name in names:
            (self.media_dir / name).unlink(missing_ok=True)

    # -- sessions ------------------------------------------------------------

    def has_session(self, session_id: str) -> bool:
        with self._lock:
            row = self._conn.execute(
                "SELECT 1 FROM session WHERE id = ?", (session_id,)
            ).fetchone()
        return row is not None

    def save_session(self, record: SessionRecord) -> None:
        with self._lock:
            try:
                self._conn.execute(
                    """INSERT INTO session (id, at, speakers_label, lipshapes_label,
                                            audio)
                       VALUES (?, ?, ?, ?, ?)""",
                    (
                        record.id,
                        record.at.isoformat(),
                        record.speakers_label,
                        record.lipshapes_label,
                        int(record.audio),
                    ),
                )
            except sqlite3.IntegrityError:
                raise DuplicateSessionError(
                    f"session {record.id} was already recorded"
                )
            for trial in record.trials:
                self._conn.execute(
                    """INSERT INTO trial (session_id, trial_index, video_id,
                                          correct_word, chosen_word, result)
                       VALUES (?, ?, ?, ?, ?, ?)""",
                    (
                        record.id,
                        trial.index,
                        trial.video_id,
                        trial.correct_word,
                        trial.chosen_word,
                        "correct" if trial.correct else "incorrect",
                    ),
                )
            self._conn.commit()

    def list_sessions(self) -> list[SessionRecord]:
        with self._lock:
            sessions = self._conn.execute(
                "SELECT * FROM session ORDER BY at, id"
            ).fetchall()
            trials = self._conn.execute(
                "SELECT * FROM trial ORDER BY session_id, trial_index"
            ).fetchall()
        grouped: dict[str, list[Trial]] = {}
        for row in trials:
            grouped.setdefault(row["session_id"], []).append(
                Trial(
                    index=row["trial_index"],
                    video_id=row["video_id"],
                    correct_word=row["correct_word"],
                    chosen_word=row["chosen_word"],
                    correct=row["result"] == "correct",
                    answered_at=datetime.fromisoformat(
                        self._session_time(sessions, row["session_id"])
                    ),
                )
            )
        return [
            SessionRecord(
                id=row["id"],
                at=datetime.fromisoformat(row["at"]),
                speakers_label=row["speakers_label"],
                lipshapes_label=row["lipshapes_label"],
                audio=bool(row["audio"]),
                trials=tuple(grouped.get(row["id"], ())),
            )
            for row in sessions
        ]

    @staticmethod
    def _session_time(sessions, session_id: str) -> str:
        for row in sessions:
            if row["id"] == session_id:
                return row["at"]
        return datetime.now().isoformat()

    # -- views and backup ------------------------------------------------------

    def library_view(self) -> LibraryView:
        """Snapshot consumed by the practice planner."""
        words = tuple(WordInfo(w.text, w.lipshape) for w in self.list_words())
        videos = tuple(
            VideoInfo(v.id, v.word, v.lipshape, v.speaker_id)
            for v in self.list_videos()
        )
        speakers = tuple(SpeakerInfo(s.id, s.name) for s in self.list_speakers())
        return LibraryView(words=words, videos=videos, speakers=speakers)

    def export_archive(self, archive_path) -> None:
        """Full backup: relational dump as JSON plus every media file."""
        dump = {
            "lipshapes": [
                {"id": r.id, "name": r.name, "phonemes": list(r.phonemes)}
                for r in self.list_lipshapes()
            ],
            "words": [
                {"id": r.id, "text": r.text, "lipshape_id": r.lipshape_id}
                for r in self.list_words()
            ],
            "speakers": [
                {
                    "id": r.id,
                    "first_name": r.first_name,
                    "last_name": r.last_name,
                    "granted_at": r.granted_at,
                    "created_at": r.created_at,
                }
                for r in self.list_speakers()
            ],
            "videos": [
                {
                    "id": r.id,
                    "word_id": r.word_id,
                    "speaker_id": r.speaker_id,
                    "lipshape_id": r.lipshape_id,
                    "path": r.path,
                    "has_audio": r.has_audio,
                    "created_at": r.created_at,
                }
                for r in self.list_videos()
            ],
            "sessions_csv": None,
        }
        from .practice import sessions_to_csv

        dump["sessions_csv"] = sessions_to_csv(self.list_sessions())
        with zipfile.ZipFile(archive_path, "w") as zf:
            zf.writestr("library.json", json.dumps(dump, indent=2))
            for video in self.list_videos():
                media = self.media_dir / video.path
                if media.exists():
                    zf.write(media, f"media/{video.path}")

    def import_archive(self, archive_path) -> None:
        """Restore a backup into this (expected fresh) store."""
        from .practice import sessions_from_csv

        with zipfile.ZipFile(archive_path) as zf:
            dump = json.loads(zf.read("library.json"))
            with self._lock:
                for table in ("trial", "session", "video", "word", "speaker", "lipshape"):
                    self._conn.execute(f"DELETE FROM {table}")
                for r in dump["lipshapes"]:
                    self._conn.execute(
                        "INSERT INTO lipshape (id, name, phonemes) VALUES (?, ?, ?)",
                        (r["id"], r["name"], " ".join(r["phonemes"])),
                    )
                for r in dump["words"]:
                    self._conn.execute(
                        "INSERT INTO word (id, text, lipshape_id) VALUES (?, ?, ?)",
                        (r["id"], r["text"], r["lipshape_id"]),
                    )
                for r in dump["speakers"]:
                    self._conn.execute(
                        """INSERT INTO speaker (id, first_name, last_name,
                               consent_informed, consent_data, consent_video,
                               granted_at, created_at)
                           VALUES (?, ?, ?, 1, 1, 1, ?, ?)""",
                        (
                            r["id"],
                            r["first_name"],
                            r["last_name"],
                            r["granted_at"],
                            r["created_at"],
                        ),
                    )
                for r in dump["videos"]:
                    self._conn.execute(
                        """INSERT INTO video (id, word_id, speaker_id, lipshape_id,
                               path, has_audio, created_at)
                           VALUES (?, ?, ?, ?, ?, ?, ?)""",
                        (
                            r["id"],
                            r["word_id"],
                            r["speaker_id"],
                            r["lipshape_id"],
                            r["path"],
                            int(r["has_audio"]),
                            r["created_at"],
                        ),
                    )
                self._conn.commit()
            for name in zf.namelist():
                if name.startswith("media/"):
                    target = self.media_dir / Path(name).name
                    with zf.open(name) as src, open(target, "wb") as dst:
                        shutil.copyfileobj(src, dst)
            for record in sessions_from_csv(dump["sessions_csv"] or ""):
                self.save_session(record)


def init_store(path) -> LibraryStore:
    """Open (and on first run seed) the library at ``path``.

    ``path`` is a directory; it will hold ``library.db`` and a private
    ``media/`` subdirectory.
    """
    root = Path(path)
    try:
        root.mkdir(parents=True, exist_ok=True)
        probe = root / ".write-probe"
        probe.write_bytes(b"")
        probe.unlink()
    except OSError as exc:
        raise StoreIOError(f"store path {root} is not writable: {exc}") from exc
    return LibraryStore(root / "library.db", root / "media")
