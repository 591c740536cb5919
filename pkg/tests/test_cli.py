"""Command-line driver tests (click runner; everything scriptable)."""

import csv
import io
import json

import pytest
from click.testing import CliRunner

from speechpractice.cli import main
from speechpractice.fixtures import make_detection_log


@pytest.fixture
def runner():
    return CliRunner()


def run(runner, store, *args, **kwargs):
    return runner.invoke(main, ["--store", str(store), *args], **kwargs)


@pytest.fixture
def lib(tmp_path, runner):
    store = tmp_path / "lib"
    result = run(runner, store, "init")
    assert result.exit_code == 0
    return store


class TestInit:
    def test_seeds_defaults(self, runner, tmp_path):
        result = run(runner, tmp_path / "lib", "init")
        assert result.exit_code == 0
        assert "6 lipshapes, 18 words" in result.output

    def test_explicit_path_argument(self, runner, tmp_path):
        result = runner.invoke(main, ["init", str(tmp_path / "other")])
        assert result.exit_code == 0


class TestLexicon:
    def test_import(self, runner, lib, tmp_path):
        source = tmp_path / "custom.txt"
        source.write_text("BAT  B AE1 T\nMAT  M AE1 T\n")
        result = run(runner, lib, "lexicon", "import", str(source))
        assert result.exit_code == 0
        assert (lib / "lexicon.txt").exists()

    def test_import_invalid_fails(self, runner, lib, tmp_path):
        source = tmp_path / "bad.txt"
        source.write_text("BAT  B XQ T\n")
        result = run(runner, lib, "lexicon", "import", str(source))
        assert result.exit_code == 1
        assert "parse-error" in result.output


class TestWordSpeakerVideo:
    def test_word_add(self, runner, lib):
        result = run(runner, lib, "word", "add", "P/B/M", "Puddle")
        assert result.exit_code == 0
        assert "Puddle" in result.output

    def test_word_add_invalid(self, runner, lib):
        result = run(runner, lib, "word", "add", "P/B/M", "Sat")
        assert result.exit_code == 1
        assert "validation-failed" in result.output

    def test_speaker_add_with_consent(self, runner, lib):
        result = run(
            runner, lib, "speaker", "add",
            input="John\nSmith\ny\ny\ny\n",
        )
        assert result.exit_code == 0
        assert "added speaker John Smith" in result.output

    def test_speaker_add_cancelled_without_consent(self, runner, lib):
        result = run(
            runner, lib, "speaker", "add",
            input="Jane\nDoe\ny\ny\nn\n",
        )
        assert result.exit_code == 1
        assert "consent-incomplete" in result.output

    def test_video_add(self, runner, lib, tmp_path):
        run(runner, lib, "speaker", "add", input="John\nSmith\ny\ny\ny\n")
        clip = tmp_path / "clip.webm"
        clip.write_bytes(b"\x1avideo")
        result = run(runner, lib, "video", "add", "1", "Bat", str(clip))
        assert result.exit_code == 0
        assert "P/B/M" in result.output


@pytest.fixture
def lib_with_videos(runner, lib, tmp_path):
    run(runner, lib, "speaker", "add", input="John\nSmith\ny\ny\ny\n")
    clip = tmp_path / "clip.webm"
    clip.write_bytes(b"\x1avideo")
    for word in ("Pat", "Bat", "Mat"):
        assert run(runner, lib, "video", "add", "1", word, str(clip)).exit_code == 0
    return lib


class TestSimulateAndStats:
    def test_perfect_oracle(self, runner, lib_with_videos):
        result = run(
            runner, lib_with_videos, "session", "simulate",
            "--lipshape", "P/B/M", "--trials", "10", "--seed", "7",
            "--oracle", "perfect",
        )
        assert result.exit_code == 0
        rows = list(csv.DictReader(io.StringIO(result.output)))
        assert len(rows) == 10
        assert all(r["result"] == "correct" for r in rows)

    def test_seeded_runs_identical(self, runner, lib_with_videos):
        args = (
            "session", "simulate", "--lipshape", "P/B/M",
            "--trials", "5", "--seed", "3", "--oracle", "random",
        )
        a = run(runner, lib_with_videos, *args)
        b = run(runner, lib_with_videos, *args)

        def words(output):
            return [
                (r["correct_word"], r["chosen_word"])
                for r in csv.DictReader(io.StringIO(output))
            ]

        assert words(a.output) == words(b.output)

    def test_confuse_matrix_oracle(self, runner, lib_with_videos, tmp_path):
        matrix = tmp_path / "matrix.csv"
        matrix.write_text("Bat,Mat,1.0\nBat,Bat,0.0\n")
        result = run(
            runner, lib_with_videos, "session", "simulate",
            "--lipshape", "P/B/M", "--trials", "10", "--seed", "1",
            "--oracle", "confuse-matrix", "--matrix", str(matrix),
        )
        assert result.exit_code == 0
        rows = list(csv.DictReader(io.StringIO(result.output)))
        bat_rows = [r for r in rows if r["correct_word"] == "Bat"]
        assert bat_rows
        assert all(r["chosen_word"] == "Mat" for r in bat_rows)

    def test_stats_accumulates(self, runner, lib_with_videos):
        for seed in (1, 2):
            run(
                runner, lib_with_videos, "session", "simulate",
                "--lipshape", "P/B/M", "--trials", "4", "--seed", str(seed),
            )
        result = run(runner, lib_with_videos, "stats")
        assert result.exit_code == 0
        assert "TOTAL,2" in result.output

    def test_insufficient_videos_domain_error(self, runner, lib):
        result = run(
            runner, lib, "session", "simulate", "--lipshape", "P/B/M",
        )
        assert result.exit_code == 1
        assert "insufficient-videos" in result.output


class TestMetricsCommands:
    def test_f1_perfect_log(self, runner, tmp_path):
        log = tmp_path / "perfect36.csv"
        lines = ["is_target,responded"]
        for t in make_detection_log("perfect", seed=5):
            lines.append(f"{int(t.is_target)},{int(t.responded)}")
        log.write_text("\n".join(lines))
        result = runner.invoke(
            main, ["--format", "json", "f1", "--log", str(log), "--exclude", "9"]
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["f1"] == 1.0

    def test_spt(self, runner, tmp_path):
        key = tmp_path / "key.txt"
        key.write_text("\n".join(f"word{i}" for i in range(40)))
        responses = tmp_path / "responses.csv"
        responses.write_text("\n".join(f"{i},word{i}" for i in range(6)))
        result = runner.invoke(
            main,
            ["--format", "json", "spt", "--key", str(key), "--responses", str(responses)],
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["score"] == 15.0

    def test_errors(self, runner, tmp_path):
        corpus = tmp_path / "corpus.txt"
        corpus.write_text("REF: the cat sat\nHYP: the cat sat down\n")
        result = runner.invoke(
            main, ["--format", "json", "errors", "--corpus", str(corpus)]
        )
        assert result.exit_code == 0
        report = json.loads(result.output)
        assert report["mean_word_error"] == 1.0
        assert report["initial_phoneme_accuracy"] == 1.0

    def test_usage_error_exit_2(self, runner):
        result = runner.invoke(main, ["f1"])
        assert result.exit_code == 2


class TestOverlayCommand:
    def test_render_writes_one_svg_per_event(self, runner, tmp_path):
        transcript = tmp_path / "t.tsv"
        transcript.write_text("0\t400\tBat\tB AE T\n500\t900\tFan\tF AE N\n")
        out = tmp_path / "svgs"
        result = runner.invoke(
            main,
            ["overlay", "render", "--transcript", str(transcript), "--out", str(out)],
        )
        assert result.exit_code == 0
        files = sorted(out.iterdir())
        assert len(files) == 2
        assert files[0].read_text().startswith("<svg")


class TestReplicate:
    @pytest.mark.parametrize("suite", ["viseme-table", "f1", "summary"])
    def test_suites_pass(self, runner, suite):
        result = runner.invoke(main, ["replicate", "--suite", suite])
        assert result.exit_code == 0
        assert "PASS" in result.output
        assert "FAIL" not in result.output

    def test_viseme_table_counts(self, runner):
        result = runner.invoke(main, ["replicate", "--suite", "viseme-table"])
        assert "48 mappings checked" in result.output
