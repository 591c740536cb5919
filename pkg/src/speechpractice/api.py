"""JSON/HTTP facade over the library, practice engine, metrics, and
overlay renderer for the browser companion and scripts.

Handlers keep no per-connection state; library mutations are serialized by
the store, and live quiz sessions are held in a registry with an idle
expiry so abandoned sessions do not leak.
"""

from __future__ import annotations

import json
import logging
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, File, Form, Query, Request, UploadFile
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from . import load_default_lexicon, load_lexicon_file, metrics, overlay, practice
from .errors import (
    AlreadyAnsweredError,
    ChoiceNotOfferedError,
    ConsentIncompleteError,
    DuplicateLipshapeError,
    DuplicateWordError,
    EmptyCorpusError,
    EmptyLogError,
    EmptySequenceError,
    IncompleteSessionError,
    InsufficientDistractorsError,
    InsufficientVideosError,
    InvalidConfigError,
    InvalidIndexError,
    MissingSessionError,
    NoVideosForWordError,
    SpeechPracticeError,
    StoreIOError,
    ValidationFailedError,
)
from .store import ConsentRecord, LibraryStore, init_store

log = logging.getLogger("speechpractice.api")

_STATUS_BY_CODE = {
    "invalid-config": 400,
    "parse-error": 400,
    "unknown-symbol": 400,
    "empty-sequence": 400,
    "not-a-consonant": 400,
    "out-of-order-event": 400,
    "choice-not-offered": 400,
    "empty-log": 400,
    "empty-corpus": 400,
    "speaker-mismatch": 400,
    "unknown-word": 404,
    "invalid-index": 404,
    "missing-speaker": 404,
    "missing-word": 404,
    "missing-video": 404,
    "missing-lipshape": 404,
    "missing-session": 404,
    "consent-incomplete": 409,
    "duplicate-word-in-lipshape": 409,
    "duplicate-lipshape": 409,
    "already-answered": 409,
    "incomplete-session": 409,
    "validation-failed": 422,
    "insufficient-videos": 507,
    "insufficient-distractors": 507,
    "no-videos-for-word": 507,
    "io-failure": 500,
    "corrupt-store": 500,
}


@dataclass
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8077
    store_path: str = "./library"
    lexicon_path: str | None = None
    media_max_mb: int = 100
    session_idle_seconds: int = 3600
    frontend_dir: str | None = None


_ENV_KEYS = {
    "SPEECHPRACTICE_HOST": "host",
    "SPEECHPRACTICE_PORT": "port",
    "SPEECHPRACTICE_STORE": "store_path",
    "SPEECHPRACTICE_LEXICON": "lexicon_path",
    "SPEECHPRACTICE_MEDIA_MAX_MB": "media_max_mb",
    "SPEECHPRACTICE_SESSION_IDLE": "session_idle_seconds",
    "SPEECHPRACTICE_FRONTEND": "frontend_dir",
}


def load_config(path=None) -> ServiceConfig:
    """Read the JSON config file (if any) and apply environment overrides."""
    config = ServiceConfig()
    if path:
        with open(path, encoding="utf-8") as fh:
            for key, value in json.load(fh).items():
                if hasattr(config, key):
                    setattr(config, key, value)
    for env_key, attr in _ENV_KEYS.items():
        value = os.environ.get(env_key)
        if value is not None:
            current = getattr(config, attr)
            setattr(config, attr, int(value) if isinstance(current, int) else value)
    return config


@dataclass
class ActiveSession:
    plan: practice.SessionPlan
    trials: list = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)
    touched: float = field(default_factory=time.monotonic)


class SessionRegistry:
    """Live quiz sessions, expired after an idle window."""

    def __init__(self, idle_seconds: int):
        self.idle_seconds = idle_seconds
        self._sessions: dict[str, ActiveSession] = {}
        self._lock = threading.Lock()

    def put(self, plan: practice.SessionPlan) -> ActiveSession:
        session = ActiveSession(plan)
        with self._lock:
            self._sweep()
            self._sessions[plan.id] = session
        return session

    def get(self, session_id: str) -> ActiveSession:
        with self._lock:
            self._sweep()
            session = self._sessions.get(session_id)
            if session is None:
                raise MissingSessionError(f"no live session {session_id}")
            session.touched = time.monotonic()
            return session

    def pop(self, session_id: str) -> None:
        with self._lock:
            self._sessions.pop(session_id, None)

    def _sweep(self) -> None:
        cutoff = time.monotonic() - self.idle_seconds
        for sid in [s for s, a in self._sessions.items() if a.touched < cutoff]:
            del self._sessions[sid]


# -- request bodies ----------------------------------------------------------


class LipshapeBody(BaseModel):
    name: str
    phonemes: list[str]


class WordBody(BaseModel):
    lipshape: str | int
    text: str


class ConsentBody(BaseModel):
    informed_about_project: bool = False
    data_use: bool = False
    video_use: bool = False


class SpeakerBody(BaseModel):
    first_name: str
    last_name: str
    consent: ConsentBody


class VideoPatchBody(BaseModel):
    word_id: Optional[int] = None
    speaker_id: Optional[int] = None
    has_audio: Optional[bool] = None


class LipshapeSessionBody(BaseModel):
    lipshape: Optional[str] = None
    speaker: Optional[int] = None
    audio: bool = True
    trials: int = 10
    seed: Optional[int] = None


class AnswerBody(BaseModel):
    index: int
    choice: str


class WordSessionBody(BaseModel):
    word: str
    speaker: Optional[int] = None
    audio: bool = True


class FaceBoxBody(BaseModel):
    x: float = 0.0
    y: float = 0.0
    width: float = 400.0
    height: float = 500.0


class OverlayRenderBody(BaseModel):
    transcript: str
    face_box: FaceBoxBody = Field(default_factory=FaceBoxBody)
    side: str = "left"
    radius: float = 0.55


class F1Body(BaseModel):
    trials: list[dict]
    exclude_first: int = 0


class SptBody(BaseModel):
    key: list[str]
    responses: dict[int, str]


class ErrorsBody(BaseModel):
    pairs: Optional[list[tuple[str, str]]] = None
    corpus: Optional[str] = None


# -- application -------------------------------------------------------------


def create_app(
    store: LibraryStore | None = None,
    lexicon=None,
    config: ServiceConfig | None = None,
) -> FastAPI:
    config = config or load_config()
    store = store or init_store(config.store_path)
    if lexicon is None:
        lexicon = (
            load_lexicon_file(config.lexicon_path)
            if config.lexicon_path
            else load_default_lexicon()
        )
    registry = SessionRegistry(config.session_idle_seconds)
    media_cap = config.media_max_mb * 1024 * 1024

    app = FastAPI(title="speechpractice", version="0.1.0")
    app.state.store = store
    app.state.lexicon = lexicon
    app.state.registry = registry
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.exception_handler(SpeechPracticeError)
    async def domain_error(_request: Request, exc: SpeechPracticeError):
        body = {"code": exc.code, "message": exc.message}
        if exc.details is not None:
            body["details"] = exc.details
        return JSONResponse(status_code=_STATUS_BY_CODE.get(exc.code, 400), content=body)

    @app.middleware("http")
    async def request_log(request: Request, call_next):
        started = time.monotonic()
        response = await call_next(request)
        log.info(
            json.dumps(
                {
                    "method": request.method,
                    "path": request.url.path,
                    "status": response.status_code,
                    "ms": round((time.monotonic() - started) * 1000, 2),
                }
            )
        )
        return response

    # -- library ------------------------------------------------------------

    @app.get("/lipshapes")
    def list_lipshapes():
        return [
            {
                "id": r.id,
                "name": r.name,
                "phonemes": list(r.phonemes),
                "word_count": r.word_count,
            }
            for r in store.list_lipshapes()
        ]

    @app.post("/lipshapes", status_code=201)
    def add_lipshape(body: LipshapeBody):
        try:
            lipshape_id = store.add_lipshape(body.name, body.phonemes)
        except ValueError as exc:
            raise InvalidConfigError(str(exc))
        return {"id": lipshape_id}

    @app.get("/lipshapes/{lipshape_id}/words")
    def words_of_lipshape(lipshape_id: int):
        store.get_lipshape(lipshape_id)
        return [
            {
                "id": r.id,
                "text": r.text,
                "lipshape": r.lipshape,
                "video_count": r.video_count,
            }
            for r in store.list_words(lipshape_id)
        ]

    def _resolve_lipshape(selector: str | int):
        if isinstance(selector, int) or str(selector).isdigit():
            return store.get_lipshape(int(selector))
        return store.get_lipshape(name=str(selector))

    @app.post("/words", status_code=201)
    def add_word(body: WordBody):
        shape = _resolve_lipshape(body.lipshape)
        word_id = store.add_word(shape.id, body.text, lexicon)
        word = store.get_word(word_id)
        return {"id": word.id, "text": word.text, "lipshape": word.lipshape}

    @app.delete("/words/{word_id}")
    def delete_word(word_id: int):
        summary = store.delete_word(word_id)
        return {"videos_deleted": summary.videos_deleted}

    # -- speakers -------------------------------------------------------------

    @app.get("/speakers")
    def list_speakers():
        return [
            {
                "id": r.id,
                "first_name": r.first_name,
                "last_name": r.last_name,
                "name": r.name,
                "video_count": r.video_count,
            }
            for r in store.list_speakers()
        ]

    @app.post("/speakers", status_code=201)
    def add_speaker(body: SpeakerBody):
        consent = ConsentRecord(
            body.consent.informed_about_project,
            body.consent.data_use,
            body.consent.video_use,
        )
        speaker_id = store.add_speaker(body.first_name, body.last_name, consent)
        return {"id": speaker_id}

    @app.delete("/speakers/{speaker_id}")
    def delete_speaker(speaker_id: int):
        summary = store.delete_speaker(speaker_id)
        return {"videos_deleted": summary.videos_deleted}

    # -- videos ---------------------------------------------------------------

    def _video_json(v):
        return {
            "id": v.id,
            "word_id": v.word_id,
            "word": v.word,
            "speaker_id": v.speaker_id,
            "speaker": v.speaker,
            "lipshape": v.lipshape,
            "has_audio": v.has_audio,
            "created_at": v.created_at,
        }

    @app.post("/videos", status_code=201)
    async def add_video(
        media: UploadFile = File(...),
        word_id: int = Form(...),
        speaker_id: int = Form(...),
        has_audio: bool = Form(True),
    ):
        payload = await media.read()
        if len(payload) > media_cap:
            raise StoreIOError(
                f"media exceeds the {config.media_max_mb} MB upload cap"
            )
        container = Path(media.filename or "clip.webm").suffix.lstrip(".") or "webm"
        video_id = store.add_video(speaker_id, word_id, payload, has_audio, container)
        return _video_json(store.get_video(video_id))

    @app.get("/videos")
    def list_videos(
        word: Optional[int] = Query(default=None),
        speaker: Optional[int] = Query(default=None),
    ):
        return [_video_json(v) for v in store.list_videos(word, speaker)]

    @app.get("/videos/{video_id}/media")
    def video_media(video_id: int):
        path = store.media_path(video_id)
        if not path.exists():
            raise StoreIOError(f"media file for video {video_id} is missing")
        return FileResponse(path)

    @app.patch("/videos/{video_id}")
    def patch_video(video_id: int, body: VideoPatchBody):
        video = store.edit_video(video_id, body.word_id, body.speaker_id, body.has_audio)
        return _video_json(video)

    @app.delete("/videos/{video_id}")
    def delete_video(video_id: int):
        summary = store.delete_video(video_id)
        return {"videos_deleted": summary.videos_deleted}

    # -- practice sessions ------------------------------------------------------

    @app.post("/sessions/lipshape", status_code=201)
    def start_lipshape_session(body: LipshapeSessionBody):
        config_ = practice.PracticeConfig(
            mode=practice.MODE_LIPSHAPE,
            lipshape=body.lipshape,
            speaker=body.speaker,
            audio=body.audio,
            trial_count=body.trials,
        )
        if body.lipshape is not None:
            store.get_lipshape(name=body.lipshape)
        if body.speaker is not None:
            store.get_speaker(body.speaker)
        seed = body.seed if body.seed is not None else uuid.uuid4().int % 2**63
        plan = practice.plan_lipshape_session(config_, store.library_view(), seed)
        registry.put(plan)
        return {
            "session_id": plan.id,
            "lipshapes": plan.lipshapes_label,
            "speakers": plan.speakers_label,
            "audio": plan.config.audio,
            "trials": [
                {"index": t.index, "video_id": t.video_id, "choices": list(t.choices)}
                for t in plan.trials
            ],
        }

    @app.post("/sessions/{session_id}/answers")
    def answer(session_id: str, body: AnswerBody):
        session = registry.get(session_id)
        with session.lock:
            trial = practice.answer_trial(
                session.plan, session.trials, body.index, body.choice, datetime.now()
            )
            session.trials.append(trial)
        return {
            "index": trial.index,
            "correct": trial.correct,
            "correct_word": trial.correct_word,
            "result": "correct" if trial.correct else "incorrect",
        }

    @app.post("/sessions/{session_id}/finish")
    def finish(session_id: str):
        session = registry.get(session_id)
        with session.lock:
            record = practice.finish_session(
                session.plan, session.trials, datetime.now()
            )
        store.save_session(record)
        registry.pop(session_id)
        return {
            "session_id": record.id,
            "date": record.at.isoformat(),
            "speakers": record.speakers_label,
            "lipshapes": record.lipshapes_label,
            "audio": record.audio,
            "n_correct": record.n_correct,
            "n_incorrect": record.n_incorrect,
            "trials": [
                {
                    "index": t.index,
                    "video_id": t.video_id,
                    "correct_word": t.correct_word,
                    "chosen_word": t.chosen_word,
                    "correct": t.correct,
                }
                for t in record.trials
            ],
        }

    @app.get("/sessions")
    def session_stats():
        summary = practice.summarize_sessions(store.list_sessions())
        return {
            "rows": [
                {
                    "session_id": r.session_id,
                    "date": r.date,
                    "speakers": r.speakers,
                    "lipshapes": r.lipshapes,
                    "audio": r.audio,
                    "n_correct": r.n_correct,
                    "n_incorrect": r.n_incorrect,
                }
                for r in summary.rows
            ],
            "totals": {
                "n_sessions": summary.n_sessions,
                "n_trials": summary.n_trials,
                "n_correct": summary.n_correct,
                "n_incorrect": summary.n_incorrect,
            },
        }

    @app.post("/sessions/word")
    def word_session(body: WordSessionBody):
        config_ = practice.PracticeConfig(
            mode=practice.MODE_WORD,
            word=body.word,
            speaker=body.speaker,
            audio=body.audio,
            trial_count=1,
        )
        ids = practice.plan_word_session(config_, store.library_view())
        return {"word": body.word, "audio": body.audio, "video_ids": ids}

    # -- overlay ---------------------------------------------------------------

    @app.get("/overlay/layout")
    def overlay_layout(side: str = "left", radius: float = 0.55):
        layout = overlay.compute_layout(side=side, radius=radius)
        return {
            "side": layout.side,
            "anchor": list(layout.anchor),
            "radius": layout.radius,
            "slots": [
                {
                    "index": s.index,
                    "angle": s.angle,
                    "symbol": s.symbol.label,
                    "viseme": s.viseme,
                }
                for s in layout.slots
            ],
        }

    @app.post("/overlay/render")
    def overlay_render(body: OverlayRenderBody):
        events = overlay.parse_transcript(body.transcript)
        layout = overlay.compute_layout(side=body.side, radius=body.radius)
        box = overlay.Rect(
            body.face_box.x, body.face_box.y, body.face_box.width, body.face_box.height
        )
        documents = []
        state = overlay.initial_state()
        for event in events:
            state = overlay.step_state(state, event)
            documents.append(
                {
                    "start_ms": event.start_ms,
                    "end_ms": event.end_ms,
                    "word": event.word,
                    "target": state.target.label if state.target else None,
                    "svg": overlay.render_overlay(layout, state, box),
                }
            )
        return {"documents": documents}

    # -- metrics -----------------------------------------------------------------

    @app.post("/metrics/f1")
    def metrics_f1(body: F1Body):
        trials = [
            metrics.ResponseTrial(bool(t.get("is_target")), bool(t.get("responded")))
            for t in body.trials
        ]
        report = metrics.f1_score(trials, body.exclude_first)
        return {
            "precision": report.precision,
            "recall": report.recall,
            "f1": report.f1,
            "tp": report.tp,
            "fp": report.fp,
            "fn": report.fn,
            "tn": report.tn,
        }

    @app.post("/metrics/spt")
    def metrics_spt(body: SptBody):
        try:
            score = metrics.spt_score(body.responses, body.key)
        except ValueError as exc:
            raise InvalidConfigError(str(exc))
        return {"score": score}

    @app.post("/metrics/errors")
    def metrics_errors(body: ErrorsBody):
        if body.pairs is None and body.corpus is None:
            raise InvalidConfigError("provide either pairs or corpus text")
        pairs = body.pairs or metrics.parse_corpus(body.corpus)
        report = metrics.corpus_errors(pairs, lexicon)
        return {
            "n_pairs": report.n_pairs,
            "mean_word_error": report.mean_word_error,
            "mean_normalized_char_error": report.mean_normalized_char_error,
            "initial_phoneme_accuracy": report.initial_phoneme_accuracy,
        }

    if config.frontend_dir and Path(config.frontend_dir).is_dir():
        app.mount(
            "/app", StaticFiles(directory=config.frontend_dir, html=True), name="app"
        )

    return app


def main() -> None:
    """Run the service with uvicorn (also exposed via the CLI)."""
    import uvicorn

    logging.basicConfig(level=logging.INFO, format="%(message)s")
    config = load_config(os.environ.get("SPEECHPRACTICE_CONFIG"))
    uvicorn.run(create_app(config=config), host=config.host, port=config.port)


if __name__ == "__main__":
    main()
