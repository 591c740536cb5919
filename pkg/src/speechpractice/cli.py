"""Command-line driver for headless use.

Everything except ``speaker add`` (which walks through the consent
dialogue) is scriptable: seeded inputs give identical outputs. Exit codes:
0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import shutil
import sys
from datetime import datetime
from pathlib import Path

import click

from . import fixtures, load_default_lexicon, load_lexicon_file, metrics, overlay, practice
from .errors import SpeechPracticeError
from .phonemes import PHONEMES, VISEME_CLASSES, viseme_of
from .store import ConsentRecord, init_store

DEFAULT_STORE = "./library"


def _open_store(path: str):
    return init_store(path)


def _load_lexicon(store_path: str, lexicon_path: str | None):
    if lexicon_path:
        return load_lexicon_file(lexicon_path)
    local = Path(store_path) / "lexicon.txt"
    if local.exists():
        return load_lexicon_file(local)
    return load_default_lexicon()


def _emit(data, fmt: str, csv_rows=None) -> None:
    if fmt == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        if csv_rows is None:
            for key, value in data.items():
                click.echo(f"{key},{value}")
        else:
            writer = csv.writer(sys.stdout)
            for row in csv_rows:
                writer.writerow(row)


@click.group()
@click.option(
    "--store",
    "store_path",
    envvar="SPEECHPRACTICE_STORE",
    default=DEFAULT_STORE,
    show_default=True,
    help="Library directory (database and media).",
)
@click.option("--lexicon", "lexicon_path", default=None, help="Lexicon file override.")
@click.option(
    "--format",
    "fmt",
    type=click.Choice(["csv", "json"]),
    default="csv",
    show_default=True,
)
@click.pass_context
def main(ctx, store_path, lexicon_path, fmt):
    """Speechreading practice toolkit."""
    ctx.ensure_object(dict)
    ctx.obj.update(store_path=store_path, lexicon_path=lexicon_path, fmt=fmt)


def _run(ctx, fn):
    try:
        fn()
    except SpeechPracticeError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        if exc.details:
            click.echo(f"  details: {exc.details}", err=True)
        ctx.exit(1)


@main.command()
@click.argument("path", required=False)
@click.pass_context
def init(ctx, path):
    """Create (or reopen) a library, seeding the default lipshapes."""

    def go():
        store = _open_store(path or ctx.obj["store_path"])
        shapes = store.list_lipshapes()
        words = store.list_words()
        click.echo(
            f"library at {store.db_path.parent}: "
            f"{len(shapes)} lipshapes, {len(words)} words"
        )

    _run(ctx, go)


@main.group()
def lexicon():
    """Pronunciation lexicon management."""


@lexicon.command("import")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def lexicon_import(ctx, file):
    """Validate a lexicon file and install it next to the library."""

    def go():
        lex = load_lexicon_file(file)
        target = Path(ctx.obj["store_path"])
        target.mkdir(parents=True, exist_ok=True)
        shutil.copyfile(file, target / "lexicon.txt")
        click.echo(f"imported {len(lex)} words into {target / 'lexicon.txt'}")

    _run(ctx, go)


@main.group()
def word():
    """Word library management."""


@word.command("add")
@click.argument("lipshape")
@click.argument("text")
@click.pass_context
def word_add(ctx, lipshape, text):
    """Add TEXT to LIPSHAPE (validated against the lexicon)."""

    def go():
        store = _open_store(ctx.obj["store_path"])
        lex = _load_lexicon(ctx.obj["store_path"], ctx.obj["lexicon_path"])
        shape = store.get_lipshape(name=lipshape)
        word_id = store.add_word(shape.id, text, lex)
        click.echo(f"added word {text} (id {word_id}) to {shape.name}")

    _run(ctx, go)


@main.group()
def speaker():
    """Speaker management."""


@speaker.command("add")
@click.option("--first", prompt="First name")
@click.option("--last", prompt="Last name")
@click.pass_context
def speaker_add(ctx, first, last):
    """Add a speaker after walking through the consent checklist."""

    def go():
        click.echo("The speaker must acknowledge all of the following:")
        consent = ConsentRecord(
            informed_about_project=click.confirm(
                "  informed about the project and how recordings are used?"
            ),
            data_use=click.confirm("  consents to their data being stored?"),
            video_use=click.confirm("  consents to video recordings being used?"),
        )
        store = _open_store(ctx.obj["store_path"])
        speaker_id = store.add_speaker(first, last, consent)
        click.echo(f"added speaker {first} {last} (id {speaker_id})")

    _run(ctx, go)


@main.group()
def video():
    """Video library management."""


@video.command("add")
@click.argument("speaker_id", type=int)
@click.argument("word_text")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--no-audio", is_flag=True, default=False)
@click.pass_context
def video_add(ctx, speaker_id, word_text, file, no_audio):
    """Record FILE as a video of WORD_TEXT spoken by SPEAKER_ID."""

    def go():
        store = _open_store(ctx.obj["store_path"])
        word_row = store.find_word(word_text)
        if word_row is None:
            from .errors import MissingWordError

            raise MissingWordError(f"no such word: {word_text}")
        payload = Path(file).read_bytes()
        container = Path(file).suffix.lstrip(".") or "bin"
        video_id = store.add_video(
            speaker_id, word_row.id, payload, not no_audio, container
        )
        click.echo(f"added video {video_id} ({word_row.text}, {word_row.lipshape})")

    _run(ctx, go)


@main.group()
def session():
    """Practice sessions."""


def _load_matrix(path: str) -> dict:
    weights = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#"):
                continue
            correct, chosen, weight = row[0], row[1], float(row[2])
            weights[(correct, chosen)] = weight
    return weights


@session.command("simulate")
@click.option("--lipshape", default=None, help="Lipshape name, or all when omitted.")
@click.option("--speaker", type=int, default=None)
@click.option("--trials", type=int, default=10, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option(
    "--oracle",
    type=click.Choice(["perfect", "random", "confuse-matrix"]),
    default="perfect",
    show_default=True,
)
@click.option("--matrix", type=click.Path(exists=True), default=None)
@click.option("--audio/--no-audio", default=True)
@click.pass_context
def session_simulate(ctx, lipshape, speaker, trials, seed, oracle, matrix, audio):
    """Run a seeded lipshape session with a simulated responder; emits CSV."""

    def go():
        store = _open_store(ctx.obj["store_path"])
        config = practice.PracticeConfig(
            mode=practice.MODE_LIPSHAPE,
            lipshape=lipshape,
            speaker=speaker,
            audio=audio,
            trial_count=trials,
        )
        plan = practice.plan_lipshape_session(config, store.library_view(), seed)
        if oracle == "perfect":
            responder = practice.perfect_responder
        elif oracle == "random":
            responder = practice.random_responder(seed)
        else:
            if not matrix:
                raise click.UsageError("--oracle confuse-matrix needs --matrix FILE")
            responder = practice.confusion_responder(_load_matrix(matrix), seed)
        record = practice.run_simulated_session(plan, responder, datetime.now())
        # the plan id is seed-deterministic; suffix re-runs so history keeps
        # every repetition of the same seeded session
        n, base = 1, record.id
        while store.has_session(record.id):
            n += 1
            record = dataclasses.replace(record, id=f"{base}-{n}")
        store.save_session(record)
        click.echo(practice.sessions_to_csv([record]), nl=False)

    _run(ctx, go)


@main.command()
@click.pass_context
def stats(ctx):
    """Per-session summary rows plus totals."""

    def go():
        store = _open_store(ctx.obj["store_path"])
        summary = practice.summarize_sessions(store.list_sessions())
        if ctx.obj["fmt"] == "json":
            _emit(
                {
                    "rows": [vars(r) | {} for r in summary.rows],
                    "totals": {
                        "n_sessions": summary.n_sessions,
                        "n_trials": summary.n_trials,
                        "n_correct": summary.n_correct,
                        "n_incorrect": summary.n_incorrect,
                    },
                },
                "json",
            )
        else:
            writer = csv.writer(sys.stdout)
            writer.writerow(
                ["date", "speakers", "lipshapes", "audio", "correct", "incorrect"]
            )
            for r in summary.rows:
                writer.writerow(
                    [
                        r.date,
                        r.speakers,
                        r.lipshapes,
                        "on" if r.audio else "off",
                        r.n_correct,
                        r.n_incorrect,
                    ]
                )
            writer.writerow(
                [
                    "TOTAL",
                    summary.n_sessions,
                    "",
                    "",
                    summary.n_correct,
                    summary.n_incorrect,
                ]
            )

    _run(ctx, go)


def _read_detection_log(path: str) -> list[metrics.ResponseTrial]:
    trials = []
    truthy = {"1", "true", "yes", "y"}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for row in reader:
            if not row or row[0].startswith("#"):
                continue
            if row[0].strip().lower() in ("is_target", "target"):
                continue
            trials.append(
                metrics.ResponseTrial(
                    row[0].strip().lower() in truthy,
                    row[1].strip().lower() in truthy,
                )
            )
    return trials


@main.command()
@click.option("--log", "log_file", required=True, type=click.Path(exists=True))
@click.option("--exclude", type=int, default=0, show_default=True)
@click.pass_context
def f1(ctx, log_file, exclude):
    """Score a detection log (CSV rows: is_target,responded)."""

    def go():
        report = metrics.f1_score(_read_detection_log(log_file), exclude)
        _emit(
            {
                "precision": round(report.precision, 6),
                "recall": round(report.recall, 6),
                "f1": round(report.f1, 6),
                "tp": report.tp,
                "fp": report.fp,
                "fn": report.fn,
                "tn": report.tn,
            },
            ctx.obj["fmt"],
        )

    _run(ctx, go)


@main.command()
@click.option("--key", "key_file", required=True, type=click.Path(exists=True))
@click.option("--responses", "resp_file", required=True, type=click.Path(exists=True))
@click.pass_context
def spt(ctx, key_file, resp_file):
    """Score a 40-word identification sheet (percent correct)."""

    def go():
        key = [
            line.strip()
            for line in Path(key_file).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        responses = {}
        with open(resp_file, newline="", encoding="utf-8") as fh:
            for row in csv.reader(fh):
                if not row or row[0].startswith("#") or not row[0].strip().isdigit():
                    continue
                responses[int(row[0])] = row[1].strip() if len(row) > 1 else ""
        try:
            score = metrics.spt_score(responses, key)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        _emit({"score": score}, ctx.obj["fmt"])

    _run(ctx, go)


@main.command()
@click.option("--corpus", "corpus_file", required=True, type=click.Path(exists=True))
@click.pass_context
def errors(ctx, corpus_file):
    """Score a transcription corpus of alternating REF:/HYP: lines."""

    def go():
        lex = _load_lexicon(ctx.obj["store_path"], ctx.obj["lexicon_path"])
        pairs = metrics.parse_corpus(Path(corpus_file).read_text(encoding="utf-8"))
        report = metrics.corpus_errors(pairs, lex)
        _emit(
            {
                "n_pairs": report.n_pairs,
                "mean_word_error": round(report.mean_word_error, 6),
                "mean_normalized_char_error": round(
                    report.mean_normalized_char_error, 6
                ),
                "initial_phoneme_accuracy": round(
                    report.initial_phoneme_accuracy, 6
                ),
            },
            ctx.obj["fmt"],
        )

    _run(ctx, go)


@main.group(name="overlay")
def overlay_group():
    """Consonant overlay rendering."""


@overlay_group.command("render")
@click.option("--transcript", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path(file_okay=False))
@click.option("--side", type=click.Choice(["left", "right"]), default="left")
@click.option("--face-width", type=float, default=400.0, show_default=True)
@click.option("--face-height", type=float, default=500.0, show_default=True)
@click.pass_context
def overlay_render(ctx, transcript, out_dir, side, face_width, face_height):
    """Render one SVG per transcript event into OUT."""

    def go():
        events = overlay.parse_transcript(
            Path(transcript).read_text(encoding="utf-8")
        )
        layout = overlay.compute_layout(side=side)
        box = overlay.Rect(0, 0, face_width, face_height)
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        state = overlay.initial_state()
        for i, event in enumerate(events):
            state = overlay.step_state(state, event)
            name = f"{i:03d}_{event.start_ms}ms_{event.word}.svg"
            (out / name).write_text(
                overlay.render_overlay(layout, state, box), encoding="utf-8"
            )
        click.echo(f"rendered {len(events)} documents into {out}")

    _run(ctx, go)


@main.command()
@click.option(
    "--suite",
    type=click.Choice(["viseme-table", "f1", "summary"]),
    required=True,
)
@click.pass_context
def replicate(ctx, suite):
    """Run a desk-scale replication suite and print pass/fail."""

    failures = []

    def check(label, ok):
        click.echo(f"{'PASS' if ok else 'FAIL'}  {label}")
        if not ok:
            failures.append(label)

    def go():
        if suite == "viseme-table":
            classes = {cid: set(c.members) for cid, c in VISEME_CLASSES.items()}
            total = sum(len(m) for m in classes.values())
            union = set().union(*classes.values())
            check("inventory holds 48 phonemes", len(PHONEMES) == 48)
            check("14 viseme classes", len(classes) == 14)
            check("classes partition the inventory", total == 48 and union == set(PHONEMES))
            anchors = {"P": "/p/", "V": "/f/", "SIL": "/sp/", "ER": "/er/"}
            for symbol, expected in anchors.items():
                check(f"{symbol} maps to {expected}", viseme_of(symbol) == expected)
            click.echo(f"{total} mappings checked")
        elif suite == "f1":
            perfect = fixtures.make_detection_log("perfect", seed=1)
            report = metrics.f1_score(perfect, fixtures.F1_EXCLUDE)
            check("perfect responder scores F1 = 1.00", abs(report.f1 - 1.0) < 1e-12)
            silent = fixtures.make_detection_log("never", seed=1)
            silent_report = metrics.f1_score(silent, fixtures.F1_EXCLUDE)
            check("never-responder recall is 0", silent_report.recall == 0.0)
            check("never-responder F1 is 0", silent_report.f1 == 0.0)
        elif suite == "summary":
            for name, (n_s, n_t, n_c, n_i) in fixtures.PARTICIPANT_SUMMARY.items():
                records = practice.sessions_from_csv(
                    practice.sessions_to_csv(
                        fixtures.make_practice_log(name, n_s, n_t, n_c)
                    )
                )
                summary = practice.summarize_sessions(records)
                got = (
                    summary.n_sessions,
                    summary.n_trials,
                    summary.n_correct,
                    summary.n_incorrect,
                )
                check(f"{name} summary {n_s}/{n_t}/{n_c}/{n_i}", got == (n_s, n_t, n_c, n_i))
        if failures:
            ctx.exit(1)

    _run(ctx, go)


@main.command()
@click.option("--config", "config_file", type=click.Path(exists=True), default=None)
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.pass_context
def serve(ctx, config_file, host, port):
    """Run the HTTP service."""
    import logging

    import uvicorn

    from .api import create_app, load_config

    logging.basicConfig(level=logging.INFO, format="%(message)s")
    config = load_config(config_file)
    config.store_path = ctx.obj["store_path"]
    if ctx.obj["lexicon_path"]:
        config.lexicon_path = ctx.obj["lexicon_path"]
    if host:
        config.host = host
    if port:
        config.port = port
    uvicorn.run(create_app(config=config), host=config.host, port=config.port)


if __name__ == "__main__":
    main()
