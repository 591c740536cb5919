"""Speechreading practice toolkit.

Core pieces: a phoneme/viseme inventory with a pronunciation lexicon, a
semi-circular consonant overlay renderer, a lipshape quiz and word drill
engine over a persistent video library, and scoring instruments for
detection logs and transcriptions.
"""

from importlib import resources

from .phonemes import Lexicon, parse_lexicon

__version__ = "0.1.0"


def load_default_lexicon() -> Lexicon:
    """Parse the lexicon bundled with the package."""
    text = (
        resources.files("speechpractice.data")
        .joinpath("default_lexicon.txt")
        .read_text(encoding="utf-8")
    )
    return parse_lexicon(text)


def load_lexicon_file(path) -> Lexicon:
    with open(path, encoding="utf-8") as fh:
        return parse_lexicon(fh.read())
