"""Homomorphisms onto finite permutation groups and their regular representations.

Permutations are tuples ``p`` with ``p[i]`` the image of ``i``; the product
``p * q`` means "apply ``q`` first", so words map to products in the same order
and the assignment ``generator -> permutation`` is a homomorphism.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import BudgetExhausted, InputError
from .presentation import FreeWord, Presentation

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conj(s: Perm, p: Perm) -> Perm:
    """``s p s^-1``."""
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[s[i]] = s[j]
    return tuple(out)


def cycle_type(p: Perm) -> tuple[int, ...]:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            k += 1
        lengths.append(k)
    return tuple(sorted(lengths, reverse=True))


def eval_word(w: FreeWord, images: Sequence[Perm], inverses: Sequence[Perm]) -> Perm:
    n = len(images[0])
    out = list(range(n))
    # product applied right-to-left: out = out * letter
    for g, s in w.letters:
        p = images[g] if s == 1 else inverses[g]
        out = [out[i] for i in p]
    return tuple(out)


class Budget:
    """Wall-clock deadline shared by a whole search; ``None`` means unlimited."""

    def __init__(self, seconds: float | None = None):
        self.seconds = seconds
        self.deadline = None if seconds is None else time.monotonic() + seconds

    def check(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExhausted(f"budget of {self.seconds} s exhausted")

    def exhausted(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


@dataclass(frozen=True)
class HomAssignment:
    """Homomorphism from a presented group to S_n, by generator images."""

    degree: int
    images: tuple[Perm, ...]
    generators: tuple[str, ...]
    image_order: int = 0

    def image_of(self, name: str) -> Perm:
        return self.images[self.generators.index(name)]

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "images": {g: list(p) for g, p in zip(self.generators, self.images)},
            "imageOrder": self.image_order,
        }

    @classmethod
    def from_json(cls, d: Mapping, generators: Sequence[str]) -> "HomAssignment":
        try:
            n = int(d["degree"])
            imgs = tuple(tuple(int(x) for x in d["images"][g]) for g in generators)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad homomorphism record: {exc}") from None
        for p in imgs:
            if sorted(p) != list(range(n)):
                raise InputError(f"not a permutation of {n} points: {list(p)}")
        h = cls(n, imgs, tuple(generators))
        return with_order(h)


def satisfies(P: Presentation, images: Sequence[Perm]) -> bool:
    invs = [inv(p) for p in images]
    ident = identity_perm(len(images[0])) if images else ()
    return all(eval_word(r, images, invs) == ident for r in P.relators)


def with_order(h: HomAssignment) -> HomAssignment:
    return HomAssignment(h.degree, h.images, h.generators, len(image_subgroup(h).elements))


def _class_representatives(n: int) -> list[Perm]:
    reps = {}
    for p in itertools.permutations(range(n)):
        reps.setdefault(cycle_type(p), p)
    return sorted(reps.values())


def enumerate_homs(
    P: Presentation,
    n: int,
    meridional: bool = False,
    dedupe_conjugates: bool = False,
    budget: Budget | None = None,
) -> list[HomAssignment]:
    """All homomorphisms from the presented group to S_n.

    With ``meridional`` the first generator is fixed to one representative
    per conjugacy class of S_n and every other generator in the same link
    component is restricted to the conjugates of its component's first
    generator; the result is then complete up to simultaneous conjugation.
    Output is sorted by images.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    ngen = len(P.generators)
    if ngen == 0:
        return [HomAssignment(n, (), (), 1)]
    all_perms = list(itertools.permutations(range(n)))
    ident = identity_perm(n)
    relators = [r for r in P.relators if len(r)]
    rel_gens = [r.generators() for r in relators]
    # for a letter x^e occurring once in r = u x^e v, x^e is forced to (v u)^-1
    solvers: list[list[tuple[int, int, FreeWord]]] = []
    for r in relators:
        counts: dict[int, int] = {}
        for g, _ in r.letters:
            counts[g] = counts.get(g, 0) + 1
        sol = []
        for k, (g, e) in enumerate(r.letters):
            if counts[g] == 1:
                sol.append((g, e, FreeWord(r.letters[k + 1:] + r.letters[:k])))
        solvers.append(sol)
    touching: list[list[int]] = [[] for _ in range(ngen)]
    for ri, gs in enumerate(rel_gens):
        for g in gs:
            touching[g].append(ri)

    comps = P.components if (meridional and P.components is not None) else None
    by_type: dict[tuple, list[Perm]] = {}
    for p in all_perms:
        by_type.setdefault(cycle_type(p), []).append(p)

    images: list[Perm] = [ident] * ngen
    invs: list[Perm] = [ident] * ngen
    assigned = [False] * ngen
    comp_type: dict[int, list[tuple]] = {}  # component -> stack of cycle types in force
    found: list[tuple[Perm, ...]] = []
    steps = 0

    def type_ok(g: int, p: Perm) -> bool:
        if comps is None:
            return True
        stack = comp_type.get(comps[g])
        return not stack or stack[-1] == cycle_type(p)

    def assign(g: int, p: Perm):
        images[g] = p
        invs[g] = inv(p)
        assigned[g] = True
        if comps is not None:
            stack = comp_type.setdefault(comps[g], [])
            stack.append(stack[-1] if stack else cycle_type(p))

    def unassign(g: int):
        images[g] = ident
        invs[g] = ident
        assigned[g] = False
        if comps is not None:
            comp_type[comps[g]].pop()

    def propagate(trail: list[int]) -> bool:
        """Assign forced generators; False on a violated relator."""
        changed = True
        while changed:
            changed = False
            for ri, r in enumerate(relators):
                free = [g for g in rel_gens[ri] if not assigned[g]]
                if not free:
                    if eval_word(r, images, invs) != ident:
                        return False
                    continue
                if len(free) != 1:
                    continue
                x = free[0]
                for g, e, w in solvers[ri]:
                    if g == x:
                        val = eval_word(w, images, invs)
                        p = inv(val) if e == 1 else val
                        if not type_ok(x, p):
                            return False
                        assign(x, p)
                        trail.append(x)
                        changed = True
                        break
        return True

    def pick() -> int:
        best, best_score = -1, -1
        for g in range(ngen):
            if assigned[g]:
                continue
            score = sum(1 for ri in touching[g] for h in rel_gens[ri] if assigned[h])
            if score > best_score:
                best, best_score = g, score
        return best

    def candidates(g: int) -> list[Perm]:
        if g == 0 and meridional:
            return _class_representatives(n)
        if comps is not None and comp_type.get(comps[g]):
            return by_type[comp_type[comps[g]][-1]]
        return all_perms

    def rec(g: int):
        nonlocal steps
        for p in candidates(g):
            steps += 1
            if budget is not None and steps % 1024 == 0:
                budget.check()
            assign(g, p)
            trail: list[int] = []
            if propagate(trail):
                nxt = pick()
                if nxt < 0:
                    found.append(tuple(images))
                else:
                    rec(nxt)
            for x in reversed(trail):
                unassign(x)
            unassign(g)

    rec(0)
    homs = [HomAssignment(n, imgs, P.generators) for imgs in sorted(found)]
    if dedupe_conjugates:
        homs = dedupe(homs)
    return [with_order(h) for h in homs]


# -- image groups -----------------------------------------------------------------


@dataclass
class FiniteGroupTable:
    """Closure of a set of permutations; ``elements[0]`` is the identity.

    Elements are listed in breadth-first order from the identity, multiplying
    on the left by the generator images in order, so the listing depends only
    on the homomorphism (in fact only on its kernel).
    """

    elements: list[Perm]
    index: dict[Perm, int] = field(repr=False)
    generator_images: tuple[Perm, ...] = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        return 0

    def left_action(self, g: Perm) -> Perm:
        """Permutation of element positions induced by left multiplication by ``g``."""
        return tuple(self.index[mul(g, e)] for e in self.elements)

    def product(self, i: int, j: int) -> int:
        return self.index[mul(self.elements[i], self.elements[j])]


def closure(gens: Sequence[Perm], n: int) -> FiniteGroupTable:
    ident = identity_perm(n)
    elements = [ident]
    index = {ident: 0}
    k = 0
    while k < len(elements):
        e = elements[k]
        for g in gens:
            x = mul(g, e)
            if x not in index:
                index[x] = len(elements)
                elements.append(x)
        k += 1
    return FiniteGroupTable(elements, index, tuple(gens))


def image_subgroup(h: HomAssignment) -> FiniteGroupTable:
    return closure(h.images, h.degree)


def dedupe(hs: Iterable[HomAssignment]) -> list[HomAssignment]:
    """One representative per orbit under simultaneous conjugation in S_n.

    The first member of each orbit (in input order) represents it; output is
    sorted by images.
    """
    hs = list(hs)
    if not hs:
        return []
    n = hs[0].degree
    perms = list(itertools.permutations(range(n)))
    reps = {}
    for h in hs:
        if h.degree != n:
            raise ValueError("dedupe needs assignments to a single S_n")
        key = min(tuple(conj(s, p) for p in h.images) for s in perms)
        if key not in reps:
            reps[key] = h
    return sorted(reps.values(), key=lambda h: h.images)


def quotient_key(h: HomAssignment) -> tuple:
    """Invariant of the kernel: regular action of the generators on the image.

    Two homomorphisms with the same kernel give the same key, so their regular
    representations (and twisted polynomials) coincide.
    """
    G = image_subgroup(h)
    return tuple(G.left_action(p) for p in h.images)


# -- representations --------------------------------------------------------------


IntMatrix = tuple[tuple[int, ...], ...]


def _perm_matrix(p: Perm) -> IntMatrix:
    k = len(p)
    rows = [[0] * k for _ in range(k)]
    for b, a in enumerate(p):
        rows[a][b] = 1
    return tuple(tuple(r) for r in rows)


def _int_det(A: Sequence[Sequence[int]]) -> int:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    d = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k]), None)
        if p is None:
            return 0
        if p != k:
            M[k], M[p] = M[p], M[k]
            d = -d
        d *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    return int(d)


def _int_inverse(A: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for k in range(n):
        p = next(i for i in range(k, n) if M[i][k])
        M[k], M[p] = M[p], M[k]
        piv = M[k][k]
        M[k] = [x / piv for x in M[k]]
        for i in range(n):
            if i != k and M[i][k]:
                f = M[i][k]
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
    out = []
    for row in M:
        right = row[n:]
        if any(x.denominator != 1 for x in right):
            raise ValueError("matrix is not invertible over Z")
        out.append(tuple(int(x) for x in right))
    return tuple(out)


def _mat_mul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    Bt = list(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col) if a) for col in Bt) for row in A)


@dataclass(frozen=True)
class Representation:
    """Integer matrices for each generator; ``provenance`` is one of
    ``"trivial"``, ``"regular-of-quotient"`` or ``"user"``.

    Permutation representations also keep their permutations, which makes
    evaluating words cheap.
    """

    dimension: int
    generators: tuple[str, ...]
    matrices: tuple[IntMatrix, ...]
    provenance: str = "user"
    hom: HomAssignment | None = None
    perms: tuple[Perm, ...] | None = None

    def matrix(self, name: str) -> IntMatrix:
        return self.matrices[self.generators.index(name)]

    def inverse_matrices(self) -> tuple[IntMatrix, ...]:
        if self.perms is not None:
            return tuple(_perm_matrix(inv(p)) for p in self.perms)
        return tuple(_int_inverse(M) for M in self.matrices)

    def word_matrix(self, w: FreeWord) -> IntMatrix:
        k = self.dimension
        if self.perms is not None:
            invs = [inv(p) for p in self.perms]
            return _perm_matrix(eval_word(w, self.perms, invs) if self.perms else identity_perm(k))
        out = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        inverses = self.inverse_matrices()
        for g, s in w.letters:
            out = _mat_mul(out, self.matrices[g] if s == 1 else inverses[g])
        return out

    def check(self, P: Presentation) -> list[str]:
        """Problems with this representation as a representation of ``P``."""
        problems = []
        if tuple(P.generators) != tuple(self.generators):
            return [f"generators {list(self.generators)} do not match presentation {list(P.generators)}"]
        k = self.dimension
        for name, M in zip(self.generators, self.matrices):
            if len(M) != k or any(len(r) != k for r in M):
                problems.append(f"matrix for {name!r} is not {k}x{k}")
            elif _int_det(M) not in (1, -1):
                problems.append(f"matrix for {name!r} is not invertible over Z")
        if problems:
            return problems
        ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
        for idx, r in enumerate(P.relators):
            if self.word_matrix(r) != ident:
                problems.append(f"relator {idx} ({P.format_word(r)!r}) is not sent to the identity")
        return problems

    def to_json(self) -> dict:
        d = {"provenance": self.provenance, "dimension": self.dimension}
        if self.hom is not None:
            d["hom"] = self.hom.to_json()
        elif self.provenance == "user":
            d["matrices"] = {g: [list(r) for r in M] for g, M in zip(self.generators, self.matrices)}
        return d

    @classmethod
    def from_json(cls, d: Mapping, P: Presentation) -> "Representation":
        try:
            mats = d["matrices"]
            rep = cls(
                int(d.get("dimension", len(next(iter(mats.values()))))),
                P.generators,
                tuple(tuple(tuple(int(x) for x in row) for row in mats[g]) for g in P.generators),
                "user",
            )
        except (KeyError, TypeError, ValueError, StopIteration) as exc:
            raise InputError(f"bad representation record: {exc!r}") from None
        problems = rep.check(P)
        if problems:
            raise InputError("representation: " + "; ".join(problems))
        return rep


def trivial_representation(P: Presentation) -> Representation:
    one = ((1,),)
    n = len(P.generators)
    return Representation(1, P.generators, (one,) * n, "trivial", None, ((0,),) * n)


def regular_representation(G: FiniteGroupTable, h: HomAssignment) -> Representation:
    """Left regular representation of the image, composed with ``h``.

    Generator ``g`` acts by the permutation matrix ``M`` with ``M[a][b] = 1``
    iff ``h(g) * elements[b] == elements[a]``, so ``M(g) M(g') = M(g g')``.
    """
    for p in h.images:
        if p not in G.index:
            raise ValueError("homomorphism images are not in the group")
    perms = tuple(G.left_action(p) for p in h.images)
    provenance = "trivial" if G.order == 1 else "regular-of-quotient"
    hom = h if h.image_order else HomAssignment(h.degree, h.images, h.generators, G.order)
    return Representation(
        G.order,
        h.generators,
        tuple(_perm_matrix(p) for p in perms),
        provenance,
        hom,
        perms,
    )
