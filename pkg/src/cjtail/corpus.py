"""Built-in named diagrams and the drawn smoothing of the mirrored 10_154."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .diagram import PlanarDiagram, parse_pd
from .errors import PDSyntaxError

__all__ = [
    "CorpusEntry",
    "load_corpus",
    "parse_corpus",
    "get",
    "names",
    "GOLDEN_10_154M",
    "TAIL_10_154M",
    "DRAWING_CIRCLES",
    "DRAWING_LEFT_CHORDS",
    "DRAWING_RIGHT_CHORDS",
    "state_10_154m",
    "moved_state_10_154m",
    "drawn_moved_state_10_154m",
]


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    pd_text: str
    expected: dict = field(default_factory=dict, compare=False)

    def diagram(self) -> PlanarDiagram:
        return parse_pd(self.pd_text)


# Lowest coefficients of J_N for the mirrored 10_154, normalized to 1 at q^0.
GOLDEN_10_154M = {
    2: [1, -2, 2, -3, 2],
    3: [1, -2, -1, 5, -3, -4],
    4: [1, -2, -1, 2, 4, -2, -7],
    5: [1, -2, -1, 2, 1, 5, -6, -5],
    6: [1, -2, -1, 2, 1, 2, 1, -4, -7],
    7: [1, -2, -1, 2, 1, 2, -2, 3, -6, -7],
    8: [1, -2, -1, 2, 1, 2, -2, 0, 1, -6, -4, 2],
}
TAIL_10_154M = [1, -2, -1, 2, 1, 2, -2, 0]


def parse_corpus(text: str) -> dict:
    """Parse ``name: PD[...]`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, pd = line.partition(":")
        if not sep or not name.strip():
            raise PDSyntaxError(f"corpus line {lineno}: expected 'name: PD[...]'")
        entry = CorpusEntry(name.strip(), pd.strip())
        entry.diagram()  # validate eagerly
        out[entry.name] = entry
    return out


def load_corpus(path: str | Path | None = None) -> dict:
    """The built-in corpus, or the one in ``path``."""
    if path is None:
        text = resources.files("cjtail").joinpath("data/corpus.txt").read_text()
        entries = parse_corpus(text)
        entries["10_154m"] = CorpusEntry("10_154m", entries["10_154m"].pd_text,
                                         {"cjp": GOLDEN_10_154M, "tail": TAIL_10_154M})
        return entries
    return parse_corpus(Path(path).read_text())


_CACHE: dict = {}


def get(name: str, path: str | Path | None = None) -> PlanarDiagram:
    key = str(path) if path else ""
    if key not in _CACHE:
        _CACHE[key] = load_corpus(path)
    try:
        return _CACHE[key][name].diagram()
    except KeyError:
        raise KeyError(f"unknown knot {name!r}") from None


def names(path: str | Path | None = None) -> list:
    return list(load_corpus(path))


# -- the drawn all-A smoothing of the mirrored 10_154 and its moved version -------
# circles as (x, y, radius); chords as pairs of endpoints on circles
DRAWING_CIRCLES = ((0, 0, 2), (0.8, 0, 0.6), (-1, 0, 0.4), (-3.5, 1.3, 0.7), (-3.5, -1.3, 0.7))
DRAWING_LEFT_CHORDS = (
    ((-0.9, 1.8), (-3, 1.8)),
    ((-1.35, 1.5), (-2.8, 1.5)),
    ((-1.35, -1.5), (-2.8, -1.5)),
    ((-3.5, -0.6), (-3.5, 0.6)),
    ((0.2, 0), (-0.6, 0)),
    ((-1.4, 0), (-2, 0)),
    ((-3.35, 0.55), (-1.4, -1.45)),
    ((0.22, -0.1), (-1.64, -0.8)),
    ((1.5, 0.2), (1.95, 0.2)),
    ((1.5, -0.2), (1.95, -0.2)),
)
DRAWING_RIGHT_CHORDS = DRAWING_LEFT_CHORDS[:5] + (
    ((-0.6, -0.3), (1.6, -1.2)),
    DRAWING_LEFT_CHORDS[6],
    ((1.5, 0.3), (1.95, 0.3)),
    ((1.5, 0), (1.95, 0)),
    ((1.5, -0.3), (1.95, -0.3)),
)


def state_10_154m():
    from .states import smoothing_from_drawing

    return smoothing_from_drawing(DRAWING_CIRCLES, DRAWING_LEFT_CHORDS)


def drawn_moved_state_10_154m():
    from .states import smoothing_from_drawing

    return smoothing_from_drawing(DRAWING_CIRCLES, DRAWING_RIGHT_CHORDS)


def _end_on(s, k, ci):
    return next(x for x in s.chords[k] if s.slot_circle[x] == ci)


def moved_state_10_154m(s=None):
    """The left drawing after moving chords 7 and 5 next to chord 2 on the outer circle."""
    from .states import main_theorem_move

    s = state_10_154m() if s is None else s
    m1 = main_theorem_move(s, 7, (0, _end_on(s, 2, 0)))
    return main_theorem_move(m1, 5, (0, _end_on(m1, 2, 0)))
