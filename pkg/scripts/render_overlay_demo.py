#!/usr/bin/env python3
"""Render the consonant overlay for a short demo transcript.

Writes one SVG per word into ./overlay_demo/ (or the directory given as
the first argument).
"""

import sys
from pathlib import Path

from speechpractice import overlay

TRANSCRIPT = """\
0\t600\tBat\tB AE T
800\t1400\tFan\tF AE N
1600\t2200\tVan\tV AE N
2400\t3000\tAt\tAE T
3200\t3800\tShill\tSH IH L
"""


def main() -> None:
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "overlay_demo")
    out.mkdir(parents=True, exist_ok=True)
    layout = overlay.compute_layout()
    face = overlay.Rect(0, 0, 400, 500)
    state = overlay.initial_state()
    for i, event in enumerate(overlay.parse_transcript(TRANSCRIPT)):
        state = overlay.step_state(state, event)
        target = state.target.label if state.target else "neutral"
        path = out / f"{i:02d}_{event.word}_{target}.svg"
        path.write_text(overlay.render_overlay(layout, state, face))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
