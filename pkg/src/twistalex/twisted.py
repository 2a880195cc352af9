"""Twisted chain complex of a presentation and its twisted Alexander polynomials.

For a presentation with generators ``x_1..x_n``, relators ``r_1..r_m``, a class
``phi`` and a representation ``alpha`` of dimension ``k``, the tensor
representation is ``Phi(g) = alpha(g) * t^phi(g)``. Chain groups are free
modules of row vectors over Z[t^{±1}] and boundaries act by right
multiplication:

* ``d2`` is ``(m k) x (n k)`` with block ``(i, j) = Phi(d r_i / d x_j)``;
* ``d1`` is ``(n k) x k`` with block ``i = Phi(x_i) - I``.

``delta0`` is the order of ``coker d1``; ``delta1`` the order of
``ker d1 / im d2``, which vanishes exactly when that module has positive rank.
For deficiency-one presentations the Wada invariant ``det(A_j) / det(Phi(x_j) - I)``
(``A_j`` is ``d2`` without block column ``j``) equals ``delta1 / delta0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import Unavailable
from .finite_reps import Representation, eval_word, inv
from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    canonicalize,
    canonicalize_q,
    divmod_laurent,
    integral_lift,
    is_monic,
    to_json as poly_json,
)
from .polymatrix import LeftKernel, PolyMatrix, det, minors_gcd, snf_q
from .presentation import FreeWord, GroupRingElement, Presentation, fox_derivative

Check = Callable[[], None] | None


def _add_term(acc: dict, key, e: int, c: int):
    cell = acc.get(key)
    if cell is None:
        acc[key] = {e: c}
    else:
        cell[e] = cell.get(e, 0) + c


class _TensorEvaluator:
    """Evaluates ``Phi`` on words and group-ring elements, caching word images."""

    def __init__(self, alpha: Representation, phi: Sequence[int]):
        self.alpha = alpha
        self.phi = tuple(phi)
        self.k = alpha.dimension
        if alpha.perms is not None:
            self._perm_invs = [inv(p) for p in alpha.perms]
        self._cache: dict[FreeWord, object] = {}

    def phi_of(self, w: FreeWord) -> int:
        ph = self.phi
        return sum(s * ph[g] for g, s in w.letters)

    def _image(self, w: FreeWord):
        m = self._cache.get(w)
        if m is None:
            if self.alpha.perms is not None:
                if self.alpha.perms:
                    m = eval_word(w, self.alpha.perms, self._perm_invs)
                else:
                    m = tuple(range(self.k))
            else:
                m = self.alpha.word_matrix(w)
            self._cache[w] = m
        return m

    def accumulate(self, acc: dict, elem: GroupRingElement, r0: int = 0, c0: int = 0):
        perm_rep = self.alpha.perms is not None
        for w, c in elem.terms.items():
            e = self.phi_of(w)
            m = self._image(w)
            if perm_rep:
                for b, a in enumerate(m):
                    _add_term(acc, (r0 + a, c0 + b), e, c)
            else:
                for a, row in enumerate(m):
                    for b, x in enumerate(row):
                        if x:
                            _add_term(acc, (r0 + a, c0 + b), e, c * x)


def _to_matrix(rows: int, cols: int, acc: dict) -> PolyMatrix:
    data = {}
    for key, cell in acc.items():
        p = LaurentPoly(cell)
        if p:
            data[key] = p
    return PolyMatrix.from_sparse(rows, cols, data)


def tensor_rep(alpha: Representation, phi: Sequence[int], g) -> PolyMatrix:
    """``Phi(g)`` for a word or a group-ring element ``g``."""
    if isinstance(g, FreeWord):
        g = GroupRingElement.of(g)
    n = len(alpha.generators)
    for w in g.terms:
        for x, _ in w.letters:
            if x >= n or x >= len(phi):
                raise KeyError(f"unknown generator index {x}")
    ev = _TensorEvaluator(alpha, phi)
    acc: dict = {}
    ev.accumulate(acc, g)
    k = alpha.dimension
    return _to_matrix(k, k, acc)


@dataclass(frozen=True)
class TwistedComplex:
    presentation: Presentation
    rep: Representation
    k: int
    d2: PolyMatrix
    d1: PolyMatrix
    pivot: int | None
    pivot_det: LaurentPoly | None

    @property
    def deficiency_one(self) -> bool:
        return self.presentation.deficiency == 1

    def block_det(self, j: int, check: Check = None) -> LaurentPoly:
        """``det(Phi(x_j) - I)``."""
        k = self.k
        return det(self.d1.submatrix(range(j * k, (j + 1) * k), range(k)), check)


def assemble(P: Presentation, alpha: Representation, check: Check = None) -> TwistedComplex:
    """Build ``d2`` and ``d1`` and verify ``d2 @ d1 == 0``.

    The pivot is the first generator with ``det(Phi(x_j) - I) != 0``; if there
    is none the complex is still returned with ``pivot = None`` (Wada
    invariant unavailable, "degenerate pivot").
    """
    report = P.validate()
    if not report.ok:
        raise ValueError("invalid presentation: " + "; ".join(report.violations))
    if tuple(alpha.generators) != tuple(P.generators):
        raise ValueError("representation and presentation have different generators")
    k = alpha.dimension
    n = len(P.generators)
    m = len(P.relators)
    ev = _TensorEvaluator(alpha, P.phi)

    acc2: dict = {}
    for i, r in enumerate(P.relators):
        for j in range(n):
            if check is not None:
                check()
            fd = fox_derivative(r, j)
            if fd:
                ev.accumulate(acc2, fd, i * k, j * k)
    d2 = _to_matrix(m * k, n * k, acc2)

    acc1: dict = {}
    for i in range(n):
        ev.accumulate(acc1, GroupRingElement.of(FreeWord.gen(i)), i * k, 0)
        for a in range(k):
            _add_term(acc1, (i * k + a, a), 0, -1)
    d1 = _to_matrix(n * k, k, acc1)

    if not (d2 @ d1).is_zero():
        raise AssertionError("chain condition d2 @ d1 == 0 failed")

    tc = TwistedComplex(P, alpha, k, d2, d1, None, None)
    for j in range(n):
        dj = tc.block_det(j, check)
        if dj:
            return TwistedComplex(P, alpha, k, d2, d1, j, dj)
    return tc


def delta0(tc: TwistedComplex, check: Check = None) -> LaurentPoly:
    """Order of ``coker d1``: gcd of the ``k x k`` minors of ``d1``."""
    if tc.d1.rows < tc.k:
        return ZERO
    return canonicalize(minors_gcd(tc.d1, tc.k, check))


def delta1_q(tc: TwistedComplex, check: Check = None) -> tuple[LaurentPoly, int]:
    """Order of ``H_1`` computed over Q[t^{±1}], and the free rank of ``H_1``.

    The order is returned as the canonical primitive integer polynomial in its
    Q-associate class; it is 0 exactly when the free rank is positive.
    """
    K = LeftKernel(tc.d1, check)
    if K.rank == 0:
        return ONE, 0
    coords = [K.coordinates(row) for row in tc.d2.entries]
    if not coords:
        return ZERO, K.rank
    C = PolyMatrix(coords, K.rank)
    factors, rank = snf_q(C, check)
    if rank < K.rank:
        return ZERO, K.rank - rank
    prod = ONE
    for f in factors:
        prod = prod * f
    return integral_lift(prod), 0


def wada(tc: TwistedComplex, pivot: int | None = None, check: Check = None) -> tuple[LaurentPoly, LaurentPoly]:
    """``(det(A_j), det(Phi(x_j) - I))`` for a deficiency-one presentation."""
    P = tc.presentation
    if P.deficiency != 1:
        raise Unavailable(f"not deficiency-1 ({len(P.generators)} generators, {len(P.relators)} relators)")
    j = tc.pivot if pivot is None else pivot
    if j is None:
        raise Unavailable("degenerate pivot: det(Phi(x_j) - I) = 0 for every generator")
    den = tc.pivot_det if (pivot is None or pivot == tc.pivot) else tc.block_det(j, check)
    if not den:
        raise Unavailable(f"degenerate pivot {P.generators[j]!r}")
    k = tc.k
    A = tc.d2.delete_cols(range(j * k, (j + 1) * k))
    return det(A, check), den


@dataclass(frozen=True)
class Delta1Z:
    poly: LaurentPoly
    content_ratio: Fraction | int
    anomaly: bool


def delta1_z(
    tc: TwistedComplex,
    d0: LaurentPoly | None = None,
    check: Check = None,
    wada_pair: tuple[LaurentPoly, LaurentPoly] | None = None,
) -> Delta1Z:
    """Integral normalization ``det(A_j) * delta0 / det(Phi(x_j) - I)``.

    If the quotient is not in Z[t^{±1}] its primitive part is returned with the
    rational content flagged as an anomaly. ``wada_pair`` reuses an already
    computed ``wada(tc)``.
    """
    num, den = wada_pair if wada_pair is not None else wada(tc, check=check)
    if d0 is None:
        d0 = delta0(tc, check)
    if not d0:
        raise Unavailable("delta0 = 0")
    q, r = divmod_laurent(num * d0, den)
    if r:
        raise AssertionError("order relation violated: det(A_j) * delta0 not divisible by the pivot determinant")
    if not q:
        return Delta1Z(ZERO, 1, False)
    if q.is_integral:
        return Delta1Z(canonicalize(q), 1, False)
    return Delta1Z(integral_lift(q), q.content(), True)


@dataclass(frozen=True)
class TwistedPolyReport:
    delta0: LaurentPoly
    delta1: LaurentPoly
    free_rank: int
    delta1_z: LaurentPoly | None
    content_ratio: Fraction | int | None
    monic: bool | None
    degree: int | None
    wada_num: LaurentPoly | None
    wada_den: LaurentPoly | None
    pivot: str | None
    rep: Representation
    label: str
    notes: tuple[str, ...] = ()

    @property
    def delta1_zero(self) -> bool:
        return not self.delta1

    @property
    def content_anomaly(self) -> bool:
        return self.content_ratio is not None and self.content_ratio != 1

    def to_json(self) -> dict:
        d = {
            "delta0": poly_json(self.delta0),
            "delta1": poly_json(self.delta1),
            "delta1Zero": self.delta1_zero,
            "freeRank": self.free_rank,
            "delta1Z": None if self.delta1_z is None else poly_json(self.delta1_z),
            "contentRatio": None if self.content_ratio is None else str(self.content_ratio),
            "monic": self.monic,
            "degree": self.degree,
            "wada": None
            if self.wada_num is None
            else {"num": poly_json(self.wada_num), "den": poly_json(self.wada_den), "pivot": self.pivot},
            "rep": self.rep.to_json(),
            "label": self.label,
        }
        if self.notes:
            d["notes"] = list(self.notes)
        return d


def label_for(P: Presentation) -> str:
    if P.source in ("braid", "connected-sum") and P.deficiency == 1:
        return "link-exterior"
    return "presentation invariant"


def twisted_report(P: Presentation, alpha: Representation, check: Check = None) -> TwistedPolyReport:
    """All twisted invariants of ``(P, phi, alpha)`` in one record."""
    tc = assemble(P, alpha, check)
    d0 = delta0(tc, check)
    d1, free_rank = delta1_q(tc, check)
    notes = []
    num = den = None
    d1z = None
    ratio = None
    try:
        num, den = wada(tc, check=check)
    except Unavailable as exc:
        notes.append(f"wada unavailable: {exc}")
    if num is not None:
        try:
            z = delta1_z(tc, d0, check, (num, den))
        except Unavailable as exc:
            notes.append(f"integral delta1 unavailable: {exc}")
        else:
            d1z, ratio = z.poly, z.content_ratio
            if canonicalize_q(z.poly) != canonicalize_q(d1):
                raise AssertionError(f"order relation mismatch: {z.poly} vs {d1}")
            if z.anomaly:
                notes.append(f"content ratio {ratio} is not 1; monicness indeterminate over Z")
    if not d1:
        monic = False
    elif d1z is not None and ratio == 1:
        monic = is_monic(d1z)
    else:
        monic = None
        if d1z is None:
            notes.append("monicness indeterminate over Z")
    return TwistedPolyReport(
        delta0=d0,
        delta1=d1,
        free_rank=free_rank,
        delta1_z=d1z,
        content_ratio=ratio,
        monic=monic,
        degree=d1.span if d1 else None,
        wada_num=num,
        wada_den=den,
        pivot=None if tc.pivot is None or num is None else P.generators[tc.pivot],
        rep=alpha,
        label=label_for(P),
        notes=tuple(notes),
    )
