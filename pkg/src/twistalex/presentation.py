"""Free-group words, finite presentations with a class phi, and Fox calculus.

Words are stored as tuples of ``(generator index, ±1)`` letters and are always
freely reduced. A :class:`Presentation` carries generator names, relators, the
cohomology class ``phi`` (one integer per generator) and, for link
presentations, the link component of each generator (meridian).

Text encoding of words: space separated letters; a generator name is the
generator, an upper-cased name or a trailing apostrophe is its inverse, so
``"x y x Y X Y"`` and ``"x y x y' x' y'"`` are the same word.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import InputError

Letter = tuple[int, int]


def _reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for g, s in self.letters:
            if s not in (1, -1) or g < 0:
                raise ValueError(f"bad letter {(g, s)!r}")
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, i: int, sign: int = 1) -> "FreeWord":
        return cls(((i, sign),))

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> "FreeWord":
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        a, b = self.letters, other.letters
        k = 0
        while k < len(a) and k < len(b):
            x, y = a[-1 - k], b[k]
            if x[0] == y[0] and x[1] == -y[1]:
                k += 1
            else:
                break
        return FreeWord._trusted(a[: len(a) - k] + b[k:])

    def inverse(self) -> "FreeWord":
        return FreeWord._trusted(tuple((g, -s) for g, s in reversed(self.letters)))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def generators(self) -> set[int]:
        return {g for g, _ in self.letters}

    def exponent_sums(self, n: int) -> list[int]:
        sums = [0] * n
        for g, s in self.letters:
            sums[g] += s
        return sums


IDENTITY = FreeWord()


class GroupRingElement:
    """Finitely supported integer combination of free-group words."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[FreeWord, int] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, w: FreeWord, c: int = 1) -> "GroupRingElement":
        return cls({w: c})

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({w: c * other for w, c in self.terms.items()})
        if isinstance(other, FreeWord):
            other = GroupRingElement.of(other)
        out: dict[FreeWord, int] = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(out)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        if isinstance(other, FreeWord):
            return GroupRingElement.of(other) * self
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, GroupRingElement):
            return self.terms == other.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        parts = [f"{c:+d}*{list(w.letters)}" for w, c in sorted(self.terms.items(), key=lambda x: x[0].letters)]
        return "GroupRingElement(" + " ".join(parts) + ")"


GR_ONE = GroupRingElement.of(IDENTITY)


def fox_derivative(w: FreeWord, j: int) -> GroupRingElement:
    """Fox free derivative of ``w`` with respect to generator ``j``."""
    if j < 0:
        raise ValueError(f"unknown generator index {j}")
    letters = w.letters
    out: dict[FreeWord, int] = {}
    for p, (g, s) in enumerate(letters):
        if g != j:
            continue
        # prefixes of a reduced word are reduced
        if s == 1:
            key = FreeWord._trusted(letters[:p])
            out[key] = out.get(key, 0) + 1
        else:
            key = FreeWord._trusted(letters[: p + 1])
            out[key] = out.get(key, 0) - 1
    return GroupRingElement(out)


# -- presentations ---------------------------------------------------------------


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[FreeWord, ...]
    phi: tuple[int, ...]
    components: tuple[int, ...] | None = None
    source: str = "user"
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        object.__setattr__(self, "phi", tuple(int(v) for v in self.phi))
        if self.components is not None:
            object.__setattr__(self, "components", tuple(self.components))
        if len(self.phi) != len(self.generators):
            raise ValueError("phi must give one value per generator")
        n = len(self.generators)
        for r in self.relators:
            for g, _ in r.letters:
                if g >= n:
                    raise ValueError(f"relator uses generator index {g} but only {n} generators")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def deficiency(self) -> int:
        return len(self.generators) - len(self.relators)

    @property
    def num_components(self) -> int | None:
        if self.components is None:
            return None
        return len(set(self.components))

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise KeyError(f"unknown generator {name!r}") from None

    def evaluate_phi(self, w: FreeWord) -> int:
        n = len(self.generators)
        total = 0
        for g, s in w.letters:
            if g >= n:
                raise KeyError(f"unknown generator index {g}")
            total += s * self.phi[g]
        return total

    def fox_derivative(self, w: FreeWord, name: str) -> GroupRingElement:
        return fox_derivative(w, self.index(name))

    def validate(self) -> ValidationReport:
        problems = []
        seen = set()
        for name in self.generators:
            if name in seen:
                problems.append(f"duplicate generator name {name!r}")
            seen.add(name)
        if not any(self.phi):
            problems.append("phi is identically zero (must be a nontrivial class)")
        for k, r in enumerate(self.relators):
            v = self.evaluate_phi(r)
            if v != 0:
                problems.append(f"relator {k} ({self.format_word(r)!r}) has phi = {v}, expected 0")
        return ValidationReport(tuple(problems))

    def parse_word(self, text: str) -> FreeWord:
        return parse_word(text, self.generators)

    def format_word(self, w: FreeWord) -> str:
        out = []
        for g, s in w.letters:
            name = self.generators[g]
            out.append(name if s == 1 else name + "'")
        return " ".join(out)

    def to_json(self) -> dict:
        d = {
            "generators": list(self.generators),
            "relators": [self.format_word(r) for r in self.relators],
            "phi": {g: v for g, v in zip(self.generators, self.phi)},
        }
        if self.components is not None:
            d["components"] = {g: c for g, c in zip(self.generators, self.components)}
        return d

    @classmethod
    def from_json(cls, d: Mapping, name: str | None = None) -> "Presentation":
        if not isinstance(d, Mapping):
            raise InputError("presentation must be a JSON object")
        for key in ("generators", "relators", "phi"):
            if key not in d:
                raise InputError(f"presentation: missing field {key!r}")
        gens = d["generators"]
        if not isinstance(gens, list) or not all(isinstance(g, str) and g for g in gens):
            raise InputError("presentation: 'generators' must be a list of names")
        for g in gens:
            if " " in g or g.endswith("'"):
                raise InputError(f"presentation: bad generator name {g!r}")
        if not isinstance(d["relators"], list):
            raise InputError("presentation: 'relators' must be a list of words")
        rels = []
        for k, text in enumerate(d["relators"]):
            if not isinstance(text, str):
                raise InputError(f"presentation: relators[{k}] must be a string")
            try:
                rels.append(parse_word(text, gens))
            except InputError as exc:
                raise InputError(f"presentation: relators[{k}]: {exc}") from None
        phi_raw = d["phi"]
        if isinstance(phi_raw, list):
            phi_raw = dict(zip(gens, phi_raw)) if len(phi_raw) == len(gens) else None
        if not isinstance(phi_raw, Mapping):
            raise InputError("presentation: 'phi' must map every generator to an integer")
        phi = []
        for g in gens:
            v = phi_raw.get(g)
            if isinstance(v, bool) or not isinstance(v, int):
                raise InputError(f"presentation: phi[{g!r}] must be an integer")
            phi.append(v)
        extra = set(phi_raw) - set(gens)
        if extra:
            raise InputError(f"presentation: phi names unknown generators {sorted(extra)}")
        comps = None
        if "components" in d:
            c = d["components"]
            if not isinstance(c, Mapping) or set(c) != set(gens):
                raise InputError("presentation: 'components' must map every generator to an index")
            comps = tuple(int(c[g]) for g in gens)
        return cls(tuple(gens), tuple(rels), tuple(phi), comps, "user", name)


def parse_word(text: str, names: Sequence[str]) -> FreeWord:
    index = {n: i for i, n in enumerate(names)}
    letters = []
    for tok in text.split():
        if tok in index:
            letters.append((index[tok], 1))
        elif tok.endswith("'") and tok[:-1] in index:
            letters.append((index[tok[:-1]], -1))
        elif tok != tok.lower() and tok.lower() in index:
            letters.append((index[tok.lower()], -1))
        else:
            raise InputError(f"unknown letter {tok!r}")
    return FreeWord(tuple(letters))


def unknot_presentation() -> Presentation:
    return Presentation(("x",), (), (1,), (0,), "user", "unknot")


# -- braids ----------------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    strands: int
    word: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "word", tuple(self.word))
        if self.strands < 2:
            raise ValueError("a braid needs at least 2 strands")
        for a in self.word:
            if a == 0 or abs(a) > self.strands - 1:
                raise ValueError(f"braid letter {a} out of range for {self.strands} strands")

    def permutation(self) -> list[int]:
        """Position at the bottom of the strand starting at each top position."""
        pos = list(range(self.strands))
        where = list(range(self.strands))  # where[p] = strand currently at position p
        for a in self.word:
            i = abs(a) - 1
            where[i], where[i + 1] = where[i + 1], where[i]
        for p, s in enumerate(where):
            pos[s] = p
        return pos

    def components(self) -> list[int]:
        perm = self.permutation()
        comp = [-1] * self.strands
        c = 0
        for s in range(self.strands):
            if comp[s] >= 0:
                continue
            j = s
            while comp[j] < 0:
                comp[j] = c
                j = perm[j]
            c += 1
        return comp


def _substitute(w: FreeWord, images: Sequence[FreeWord]) -> FreeWord:
    out = IDENTITY
    for g, s in w.letters:
        out = out * (images[g] if s == 1 else images[g].inverse())
    return out


def artin_action(letter: int, strands: int) -> list[FreeWord]:
    """Images of the generators under the Artin automorphism of one braid letter."""
    i = abs(letter) - 1
    x = [FreeWord.gen(k) for k in range(strands)]
    imgs = list(x)
    if letter > 0:
        imgs[i] = x[i] * x[i + 1] * x[i].inverse()
        imgs[i + 1] = x[i]
    else:
        imgs[i] = x[i + 1]
        imgs[i + 1] = x[i + 1].inverse() * x[i] * x[i + 1]
    return imgs


def braid_automorphism(b: BraidWord) -> list[FreeWord]:
    images = [FreeWord.gen(k) for k in range(b.strands)]
    for a in b.word:
        act = artin_action(a, b.strands)
        images = [_substitute(w, act) for w in images]
    return images


def braid_to_presentation(b: BraidWord, name: str | None = None) -> Presentation:
    """Presentation of the closure's link group, one meridian per strand.

    Relators are ``x_j^-1 beta(x_j)`` with the last one dropped; relators that
    reduce to the identity are omitted. phi is 1 on every meridian.
    """
    beta = braid_automorphism(b)
    rels = []
    for j in range(b.strands - 1):
        r = FreeWord.gen(j, -1) * beta[j]
        if len(r):
            rels.append(r)
    gens = tuple(f"x{k + 1}" for k in range(b.strands))
    return Presentation(gens, tuple(rels), (1,) * b.strands, tuple(b.components()), "braid", name)


def connected_sum(P0: Presentation, m0: str, P1: Presentation, m1: str) -> Presentation:
    """Glue two knot presentations along the meridians ``m0`` and ``m1``."""
    i0 = P0.index(m0)
    i1 = P1.index(m1)
    if P0.phi[i0] != P1.phi[i1]:
        raise ValueError(
            f"phi mismatch on glued meridians: phi({m0}) = {P0.phi[i0]}, phi({m1}) = {P1.phi[i1]}"
        )
    taken = set(P0.generators)
    names1 = []
    for g in P1.generators:
        new = g
        k = 2
        while new in taken:
            new = f"{g}_{k}"
            k += 1
        taken.add(new)
        names1.append(new)
    n0 = len(P0.generators)
    shifted = [FreeWord(tuple((g + n0, s) for g, s in r.letters)) for r in P1.relators]
    glue = FreeWord.gen(i0) * FreeWord.gen(i1 + n0, -1)
    comps = None
    if P0.components is not None and P1.components is not None:
        c0 = list(P0.components)
        top = max(c0) + 1 if c0 else 0
        target = P0.components[i0]
        glued = P1.components[i1]
        remap = {}
        for c in P1.components:
            if c not in remap:
                remap[c] = target if c == glued else top + len(remap)
        comps = tuple(c0 + [remap[c] for c in P1.components])
    name = None
    if P0.name and P1.name:
        name = f"{P0.name}#{P1.name}"
    return Presentation(
        P0.generators + tuple(names1),
        P0.relators + tuple(shifted) + (glue,),
        P0.phi + P1.phi,
        comps,
        "connected-sum" if {P0.source, P1.source} <= {"braid", "connected-sum"} else "user",
        name,
    )
