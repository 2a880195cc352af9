"""Built-in knots and links with their known classical invariants.

The expected Alexander polynomials come from Seifert matrices (see the test
suite), not from the braid words; the braid words are only accepted once the
engine reproduces the expected polynomial from them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError
from .laurent import LaurentPoly
from .presentation import BraidWord, Presentation, braid_to_presentation, unknot_presentation


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    braid: BraidWord | None
    alexander: tuple[int, ...]  # coefficients from t^0 up
    fibered: bool
    genus: int | None
    components: int = 1

    @property
    def expected(self) -> LaurentPoly:
        return LaurentPoly.from_coeffs(self.alexander)

    def presentation(self) -> Presentation:
        if self.braid is None:
            return unknot_presentation()
        return braid_to_presentation(self.braid, self.name)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "braid": None if self.braid is None else {"strands": self.braid.strands, "word": list(self.braid.word)},
            "alexander": {str(i): str(c) for i, c in enumerate(self.alexander) if c},
            "fibered": self.fibered,
            "genus": self.genus,
            "components": self.components,
        }


CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("unknot", None, (1,), True, 0),
        CatalogEntry("3_1", BraidWord(2, (1, 1, 1)), (1, -1, 1), True, 1),
        CatalogEntry("4_1", BraidWord(3, (1, -2, 1, -2)), (1, -3, 1), True, 1),
        CatalogEntry("5_1", BraidWord(2, (1, 1, 1, 1, 1)), (1, -1, 1, -1, 1), True, 2),
        CatalogEntry("5_2", BraidWord(3, (1, 1, 1, 2, -1, 2)), (2, -3, 2), False, 1),
        CatalogEntry("6_1", BraidWord(4, (1, 1, 2, -1, -3, 2, -3)), (2, -5, 2), False, 1),
        CatalogEntry("hopf", BraidWord(2, (1, 1)), (-1, 1), True, None, 2),
    ]
}


def lookup(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise InputError(f"unknown catalog entry {name!r}; known: {', '.join(CATALOG)}") from None


def parse_braid(d: dict) -> BraidWord:
    if not isinstance(d.get("strands"), int) or isinstance(d.get("strands"), bool):
        raise InputError("braid: 'strands' must be an integer")
    word = d.get("word", [])
    if not isinstance(word, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in word):
        raise InputError("braid: 'word' must be a list of nonzero integers")
    try:
        return BraidWord(d["strands"], tuple(word))
    except ValueError as exc:
        raise InputError(f"braid: {exc}") from None


def presentation_from_json(d, name: str | None = None) -> Presentation:
    """Dispatch on the JSON shape: braid records or raw presentations."""
    if not isinstance(d, dict):
        raise InputError("input must be a JSON object")
    if "strands" in d:
        P = braid_to_presentation(parse_braid(d), name)
    elif "generators" in d:
        P = Presentation.from_json(d, name)
    else:
        raise InputError("input must be a braid ({strands, word}) or a presentation ({generators, relators, phi})")
    report = P.validate()
    if not report.ok:
        raise InputError("invalid presentation: " + "; ".join(report.violations))
    return P


def parse_input(ref: str) -> Presentation:
    """A ``catalog:NAME`` reference or a path to a braid/presentation JSON file."""
    if ref.startswith("catalog:"):
        return lookup(ref[len("catalog:"):]).presentation()
    path = Path(ref)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{ref}: {exc.strerror}") from None
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{ref}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return presentation_from_json(d, path.stem)
    except InputError as exc:
        raise InputError(f"{ref}: {exc}") from None
