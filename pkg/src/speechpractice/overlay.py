"""Semi-circular consonant overlay.

A condensed 22-symbol consonant display is arranged on a semicircle that
runs alongside the speaker's face from forehead to chin.  An arrow from the
semicircle's centre points at the initial consonant of the last spoken word
and persists until the next word.  Rendering emits plain SVG using only
black and white so the overlay stays legible for users with colour vision
deficiency.
"""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from .errors import (
    NotAConsonantError,
    OutOfOrderEventError,
    TranscriptParseError,
)
from .phonemes import CONSONANTS, PHONEMES, initial_consonant, viseme_of

# Condensations applied to the 30-consonant inventory. The syllabic
# consonants EM and EL are absorbed into their base letters so that every
# consonant has a display symbol.
_MERGES = {
    "DX": "TH",
    "DH": "TH",
    "WH": "W",
    "ZH": "SH",
    "NX": "NG",
    "EN": "NG",
    "EM": "M",
    "EL": "L",
}

_DISPLAY_ORDER = (
    "P", "B", "M", "F", "V", "T", "D", "S", "Z", "TH",
    "W", "R", "CH", "JH", "SH", "K", "G", "N", "L", "HH", "Y", "NG",
)


@dataclass(frozen=True)
class DisplaySymbol:
    """One overlay label and the consonants it stands for."""

    label: str
    source_phonemes: frozenset[str]


def _build_display_set() -> dict[str, DisplaySymbol]:
    sources: dict[str, set[str]] = {label: set() for label in _DISPLAY_ORDER}
    for consonant in CONSONANTS:
        sources[_MERGES.get(consonant, consonant)].add(consonant)
    return {
        label: DisplaySymbol(label, frozenset(sources[label]))
        for label in _DISPLAY_ORDER
    }


_DISPLAY_SYMBOLS = _build_display_set()


def display_set() -> list[DisplaySymbol]:
    """The 22 display symbols in canonical order."""
    return [_DISPLAY_SYMBOLS[label] for label in _DISPLAY_ORDER]


def simplify(symbol: str) -> DisplaySymbol:
    """Condense a consonant phoneme to its display symbol."""
    if symbol not in PHONEMES or symbol not in CONSONANTS:
        raise NotAConsonantError(f"{symbol!r} is not a consonant phoneme")
    return _DISPLAY_SYMBOLS[_MERGES.get(symbol, symbol)]


@dataclass(frozen=True)
class Slot:
    index: int
    angle: float
    symbol: DisplaySymbol
    viseme: str


@dataclass(frozen=True)
class OverlayLayout:
    """Slot assignment on the semicircle (index 0 = forehead, 21 = chin).

    ``anchor`` is face-relative: fractions of the face box's width/height.
    ``radius`` is a fraction of the face box height. ``side`` picks which
    side of the face the semicircle bulges away from.
    """

    slots: tuple[Slot, ...]
    anchor: tuple[float, float]
    radius: float
    side: str

    def slot_for(self, label: str) -> Slot:
        for slot in self.slots:
            if slot.symbol.label == label:
                return slot
        raise KeyError(label)


def _schedule_slots() -> list[DisplaySymbol]:
    """Greedy dispersal: always place from the largest class that differs
    from the previous slot's class (ties broken by class id), handing each
    class its members in alphabetical order.

    Class sizes here are {7,5,3,3,2,2}; the largest never exceeds half of
    22, so the no-adjacent-same-class constraint is always satisfiable.
    """
    members: dict[str, list[str]] = {}
    for symbol in display_set():
        members.setdefault(viseme_of(symbol.label), []).append(symbol.label)
    for labels in members.values():
        labels.sort()
    placed: list[DisplaySymbol] = []
    prev = None
    for _ in range(len(_DISPLAY_ORDER)):
        candidates = [cid for cid, rest in members.items() if rest and cid != prev]
        if not candidates:
            raise RuntimeError("dispersal got stuck; class sizes changed?")
        pick = min(candidates, key=lambda cid: (-len(members[cid]), cid))
        placed.append(_DISPLAY_SYMBOLS[members[pick].pop(0)])
        prev = pick
    return placed


def compute_layout(
    anchor: tuple[float, float] | None = None,
    radius: float = 0.55,
    side: str = "left",
) -> OverlayLayout:
    """Deterministic 22-slot layout; slot i sits at 90 - i*(180/21) degrees."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if anchor is None:
        anchor = (0.0, 0.5) if side == "left" else (1.0, 0.5)
    step = 180.0 / (len(_DISPLAY_ORDER) - 1)
    slots = tuple(
        Slot(i, 90.0 - i * step, symbol, viseme_of(symbol.label))
        for i, symbol in enumerate(_schedule_slots())
    )
    return OverlayLayout(slots, anchor, radius, side)


@dataclass(frozen=True)
class TranscriptEvent:
    start_ms: int
    end_ms: int
    word: str
    phonemes: tuple[str, ...]


def parse_transcript(text: str) -> list[TranscriptEvent]:
    """Parse a timed transcript.

    One event per line: ``start_ms<TAB>end_ms<TAB>word<TAB>phonemes`` with
    the phoneme tokens separated by single spaces. ``#`` starts a comment.
    Events must be sorted by start and non-overlapping.
    """
    events: list[TranscriptEvent] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise TranscriptParseError("expected 4 tab-separated fields", line_no)
        try:
            start_ms, end_ms = int(parts[0]), int(parts[1])
        except ValueError:
            raise TranscriptParseError("timestamps must be integers", line_no)
        if start_ms > end_ms:
            raise TranscriptParseError("start_ms exceeds end_ms", line_no)
        word = parts[2].strip()
        if not word:
            raise TranscriptParseError("empty word field", line_no)
        phonemes = tuple(parts[3].split(" "))
        for token in phonemes:
            if token not in PHONEMES:
                raise TranscriptParseError(f"unknown phoneme token {token!r}", line_no)
        if events and start_ms < events[-1].end_ms:
            raise TranscriptParseError("events overlap or are out of order", line_no)
        events.append(TranscriptEvent(start_ms, end_ms, word, phonemes))
    return events


@dataclass(frozen=True)
class OverlayState:
    """Arrow target (a display symbol, or None for neutral) and when it
    last changed. The target persists between words."""

    target: DisplaySymbol | None
    since_ms: int


def initial_state() -> OverlayState:
    return OverlayState(None, 0)


def step_state(state: OverlayState, event: TranscriptEvent) -> OverlayState:
    """Advance the arrow at a word boundary.

    A consonant-initial word points the arrow at its condensed initial
    consonant; a vowel- or pause-initial word hides the arrow rather than
    leaving it on a stale consonant.
    """
    if event.start_ms < state.since_ms:
        raise OutOfOrderEventError(
            f"event at {event.start_ms}ms precedes state at {state.since_ms}ms"
        )
    first = initial_consonant(event.phonemes)
    target = simplify(first) if first is not None else None
    return OverlayState(target, event.start_ms)


def replay_states(events) -> list[OverlayState]:
    """States after each event, starting from the neutral initial state."""
    states = []
    state = initial_state()
    for event in events:
        state = step_state(state, event)
        states.append(state)
    return states


@dataclass(frozen=True)
class Rect:
    x: float
    y: float
    width: float
    height: float


def _slot_position(layout: OverlayLayout, slot: Slot, face_box: Rect, scale=1.0):
    ax = face_box.x + layout.anchor[0] * face_box.width
    ay = face_box.y + layout.anchor[1] * face_box.height
    r = layout.radius * face_box.height * scale
    theta = math.radians(slot.angle)
    direction = -1.0 if layout.side == "left" else 1.0
    return (ax + direction * r * math.cos(theta), ay - r * math.sin(theta))


def render_overlay(
    layout: OverlayLayout, state: OverlayState, face_box: Rect
) -> str:
    """Emit an SVG document: 22 outlined labels plus, when the arrow has a
    target, a black arrow with a white outline from the semicircle centre
    to the target's slot. Black and white only."""
    if face_box.width <= 0 or face_box.height <= 0:
        raise ValueError("face_box must be nonempty")

    ax = face_box.x + layout.anchor[0] * face_box.width
    ay = face_box.y + layout.anchor[1] * face_box.height
    r = layout.radius * face_box.height
    font_size = max(8.0, 0.11 * r)

    positions = {s.symbol.label: _slot_position(layout, s, face_box) for s in layout.slots}
    # labels sit slightly beyond the slot radius so the arrow tip stays clear
    label_positions = {
        s.symbol.label: _slot_position(layout, s, face_box, scale=1.12)
        for s in layout.slots
    }

    xs = [p[0] for p in label_positions.values()] + [face_box.x, face_box.x + face_box.width]
    ys = [p[1] for p in label_positions.values()] + [face_box.y, face_box.y + face_box.height]
    margin = font_size * 2
    min_x, min_y = min(xs) - margin, min(ys) - margin
    width, height = max(xs) - min_x + margin, max(ys) - min_y + margin

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "viewBox": f"{min_x:.1f} {min_y:.1f} {width:.1f} {height:.1f}",
            "width": f"{width:.0f}",
            "height": f"{height:.0f}",
        },
    )

    if state.target is not None:
        tip = positions[state.target.label]
        arrow = ET.SubElement(
            svg,
            "g",
            {"class": "overlay-arrow", "data-target": state.target.label},
        )
        for cls, stroke, extra in (
            ("overlay-arrow-outline", "#ffffff", 3.0),
            ("overlay-arrow-ink", "#000000", 0.0),
        ):
            ET.SubElement(
                arrow,
                "line",
                {
                    "class": cls,
                    "x1": f"{ax:.2f}",
                    "y1": f"{ay:.2f}",
                    "x2": f"{tip[0]:.2f}",
                    "y2": f"{tip[1]:.2f}",
                    "stroke": stroke,
                    "stroke-width": f"{max(1.5, r * 0.02) + extra:.2f}",
                },
            )
        head = _arrowhead(ax, ay, tip, size=max(4.0, r * 0.045))
        ET.SubElement(
            arrow,
            "polygon",
            {
                "class": "overlay-arrowhead",
                "points": head,
                "fill": "#000000",
                "stroke": "#ffffff",
                "stroke-width": "1.00",
            },
        )

    for slot in layout.slots:
        lx, ly = label_positions[slot.symbol.label]
        text = ET.SubElement(
            svg,
            "text",
            {
                "class": "overlay-label",
                "data-symbol": slot.symbol.label,
                "data-slot": str(slot.index),
                "x": f"{lx:.2f}",
                "y": f"{ly:.2f}",
                "fill": "#000000",
                "stroke": "#ffffff",
                "stroke-width": f"{font_size / 6:.2f}",
                "paint-order": "stroke",
                "font-family": "Helvetica, Arial, sans-serif",
                "font-size": f"{font_size:.1f}",
                "text-anchor": "middle",
                "dominant-baseline": "central",
            },
        )
        text.text = slot.symbol.label

    return ET.tostring(svg, encoding="unicode")


def _arrowhead(ax: float, ay: float, tip: tuple[float, float], size: float) -> str:
    dx, dy = tip[0] - ax, tip[1] - ay
    norm = math.hypot(dx, dy) or 1.0
    ux, uy = dx / norm, dy / norm
    px, py = -uy, ux
    base_x, base_y = tip[0] - ux * size * 2, tip[1] - uy * size * 2
    pts = [
        tip,
        (base_x + px * size, base_y + py * size),
        (base_x - px * size, base_y - py * size),
    ]
    return " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
