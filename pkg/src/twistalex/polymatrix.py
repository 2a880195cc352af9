"""Matrices over Laurent polynomial rings and exact linear algebra on them.

The twisted boundary matrices are large but very sparse, and most of their
nonzero entries are units (``±t^k``). Every routine here therefore starts with
a sparse elimination that pivots on units, which preserves determinants up to
a tracked unit, Fitting ideals, Smith forms and kernels, and only then hands a
small dense residual to the generic Euclidean / fraction-free algorithms.
"""

from __future__ import annotations

from bisect import bisect_left
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Sequence

from .laurent import (
    ONE,
    ZERO,
    LaurentPoly,
    canonicalize_q,
    divmod_laurent,
    exact_div,
    gcd_z,
)

MAX_MINORS = 200_000


def _as_poly(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly({0: x}) if x else ZERO


class PolyMatrix:
    """Immutable dense ``rows x cols`` matrix of :class:`LaurentPoly` entries."""

    __slots__ = ("rows", "cols", "entries", "_sparse")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        rows = tuple(tuple(_as_poly(x) for x in row) for row in entries)
        if cols is None:
            if not rows:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows
        self._sparse = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "PolyMatrix":
        return cls([[ZERO] * cols for _ in range(rows)], cols)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_sparse(cls, rows: int, cols: int, data: dict) -> "PolyMatrix":
        """Build from ``{(i, j): entry}``; missing entries are zero."""
        grid = [[ZERO] * cols for _ in range(rows)]
        for (i, j), v in data.items():
            grid[i][j] = _as_poly(v)
        return cls(grid, cols)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["PolyMatrix"]]) -> "PolyMatrix":
        out = []
        for brow in blocks:
            h = brow[0].rows
            for r in range(h):
                line = []
                for b in brow:
                    line.extend(b.entries[r])
                out.append(line)
        cols = sum(b.cols for b in blocks[0]) if blocks else 0
        return cls(out, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def sparse_rows(self) -> list[dict[int, LaurentPoly]]:
        if self._sparse is None:
            self._sparse = [{j: e for j, e in enumerate(row) if e} for row in self.entries]
        return self._sparse

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other)
        return PolyMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.cols,
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        self._check_same_shape(other)
        return PolyMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.entries, other.entries)],
            self.cols,
        )

    def __neg__(self):
        return PolyMatrix([[-a for a in row] for row in self.entries], self.cols)

    def scale(self, c) -> "PolyMatrix":
        c = _as_poly(c)
        return PolyMatrix([[c * a for a in row] for row in self.entries], self.cols)

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        B = other.sparse_rows()
        out = []
        for arow in self.sparse_rows():
            acc: dict[int, LaurentPoly] = {}
            for k, a in arow.items():
                for j, b in B[k].items():
                    v = acc.get(j)
                    acc[j] = a * b if v is None else v + a * b
            line = [ZERO] * other.cols
            for j, v in acc.items():
                line[j] = v
            out.append(line)
        return PolyMatrix(out, other.cols)

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix([list(col) for col in zip(*self.entries)] if self.rows else [], self.rows)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "PolyMatrix":
        cols = list(cols)
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], len(cols))

    def delete_cols(self, cols: Iterable[int]) -> "PolyMatrix":
        drop = set(cols)
        return self.submatrix(range(self.rows), [j for j in range(self.cols) if j not in drop])

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    @property
    def ring(self) -> str:
        return "INT" if all(e.is_integral for row in self.entries for e in row) else "RAT"

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"PolyMatrix({self.rows}x{self.cols}: [{body}])"


# -- sparse unit-pivot elimination --------------------------------------------


class _Sparse:
    """Mutable sparse matrix supporting Schur-complement elimination on a pivot."""

    def __init__(self, rows: dict[int, dict[int, LaurentPoly]], col_ids: Iterable[int]):
        self.rows = rows
        self.cols: dict[int, set[int]] = {j: set() for j in col_ids}
        for i, row in rows.items():
            for j in row:
                self.cols[j].add(i)

    @classmethod
    def of(cls, M: PolyMatrix) -> "_Sparse":
        return cls({i: dict(r) for i, r in enumerate(M.sparse_rows())}, range(M.cols))

    def find_unit(self, is_unit: Callable[[LaurentPoly], bool]):
        """Unit pivot of least Markowitz cost, ties broken by position."""
        best = None
        best_score = None
        cols = self.cols
        for i in sorted(self.rows):
            row = self.rows[i]
            ri = len(row) - 1
            for j in sorted(row):
                e = row[j]
                if len(e._c) == 1 and is_unit(e):
                    score = ri * (len(cols[j]) - 1)
                    if best_score is None or score < best_score:
                        best, best_score = (i, j), score
                        if score == 0:
                            return best
        return best

    def eliminate(self, i: int, j: int):
        """Remove row ``i`` and column ``j`` via the Schur complement.

        Returns ``(pivot, factors)`` where ``factors[r] = M[r][j] / pivot`` for
        every other row ``r`` that had a nonzero entry in column ``j``.
        """
        prow = self.rows.pop(i)
        u = prow[j]
        uinv = u.unit_inverse()
        others = self.cols.pop(j)
        others.discard(i)
        for c in prow:
            if c != j:
                self.cols[c].discard(i)
        factors = {}
        for r in sorted(others):
            row = self.rows[r]
            f = row.pop(j) * uinv
            factors[r] = f
            for c, e in prow.items():
                if c == j:
                    continue
                v = row.get(c)
                nv = -(f * e) if v is None else v - f * e
                if nv:
                    row[c] = nv
                    self.cols[c].add(r)
                elif v is not None:
                    del row[c]
                    self.cols[c].discard(r)
        return u, factors

    def dense(self) -> tuple[list[int], list[int], list[list[LaurentPoly]]]:
        rids = sorted(self.rows)
        cids = sorted(self.cols)
        grid = [[self.rows[i].get(j, ZERO) for j in cids] for i in rids]
        return rids, cids, grid


def _is_unit_z(p: LaurentPoly) -> bool:
    return p.is_unit_z()


def _is_unit_q(p: LaurentPoly) -> bool:
    return p.is_unit_q()


def _pick_z_first(S: _Sparse):
    return S.find_unit(_is_unit_z) or S.find_unit(_is_unit_q)


# -- determinant --------------------------------------------------------------


def _bareiss(A: list[list[LaurentPoly]], check: Callable[[], None] | None = None) -> LaurentPoly:
    n = len(A)
    if n == 0:
        return ONE
    A = [list(row) for row in A]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        cand = [i for i in range(k, n) if A[i][k]]
        if not cand:
            return ZERO
        p = min(cand, key=lambda i: (A[i][k].span, len(A[i][k]._c), i))
        if p != k:
            A[k], A[p] = A[p], A[k]
            sign = -sign
        akk = A[k][k]
        for i in range(k + 1, n):
            if check is not None:
                check()
            aik = A[i][k]
            row_i = A[i]
            row_k = A[k]
            for j in range(k + 1, n):
                num = row_i[j] * akk - aik * row_k[j]
                row_i[j] = exact_div(num, prev) if num else ZERO
            row_i[k] = ZERO
        prev = akk
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def det(M: PolyMatrix, check: Callable[[], None] | None = None) -> LaurentPoly:
    """Exact determinant of a square matrix."""
    if M.rows != M.cols:
        raise ValueError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    S = _Sparse.of(M)
    rids = list(range(M.rows))
    cids = list(range(M.cols))
    acc = ONE
    while True:
        if check is not None:
            check()
        if any(not row for row in S.rows.values()):
            return ZERO
        piv = _pick_z_first(S)
        if piv is None:
            break
        i, j = piv
        pr = bisect_left(rids, i)
        pc = bisect_left(cids, j)
        rids.pop(pr)
        cids.pop(pc)
        u, _ = S.eliminate(i, j)
        acc = acc * u
        if (pr + pc) % 2:
            acc = -acc
    _, _, grid = S.dense()
    return acc * _bareiss(grid, check)


# -- Smith normal form over Q[t^{±1}] ---------------------------------------------


def _snf_dense(A: list[list[LaurentPoly]], check=None) -> list[LaurentPoly]:
    """Nonzero invariant factors of a dense matrix over the PID Q[t^{±1}]."""
    A = [list(row) for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    factors = []
    t = 0
    while t < min(m, n):
        if check is not None:
            check()
        nz = [(A[i][j].span, i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[t], A[pi] = A[pi], A[t]
        for row in A:
            row[t], row[pj] = row[pj], row[t]
        while True:
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if check is not None:
                    check()
                if A[i][t]:
                    q, r = divmod_laurent(A[i][t], p)
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if r:
                        clean = False
            for j in range(t + 1, n):
                if check is not None:
                    check()
                if A[t][j]:
                    q, r = divmod_laurent(A[t][j], p)
                    if q:
                        for row in A:
                            row[j] = row[j] - q * row[t]
                    if r:
                        clean = False
            if clean:
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if A[i][j] and divmod_laurent(A[i][j], p)[1]:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad])]
                continue
            # a remainder survived: move the smallest entry of row/column t to the pivot
            best = (A[t][t].span, t, t)
            for i in range(t + 1, m):
                if A[i][t] and A[i][t].span < best[0]:
                    best = (A[i][t].span, i, t)
            for j in range(t + 1, n):
                if A[t][j] and A[t][j].span < best[0]:
                    best = (A[t][j].span, t, j)
            _, bi, bj = best
            if bi != t:
                A[t], A[bi] = A[bi], A[t]
            if bj != t:
                for row in A:
                    row[t], row[bj] = row[bj], row[t]
        factors.append(canonicalize_q(A[t][t]))
        t += 1
    return factors


def snf_q(M: PolyMatrix, check=None) -> tuple[list[LaurentPoly], int]:
    """Invariant factors ``d1 | d2 | ...`` over Q[t^{±1}] and the rank.

    Each factor is monic with minimum exponent 0.
    """
    S = _Sparse.of(M)
    units = 0
    while True:
        if check is not None:
            check()
        piv = S.find_unit(_is_unit_q)
        if piv is None:
            break
        S.eliminate(*piv)
        units += 1
    _, _, grid = S.dense()
    rest = _snf_dense(grid, check) if grid and grid[0] else []
    factors = [ONE] * units + rest
    return factors, len(factors)


def rank_q(M: PolyMatrix) -> int:
    return snf_q(M)[1]


# -- left kernel over Q[t^{±1}] -------------------------------------------------


class LeftKernel:
    """Free basis of ``{v : v @ M == 0}`` over Q[t^{±1}], with coordinates.

    Unit pivots solve one variable in terms of the others; the surviving
    ("free") variables carry a small residual system that is row-reduced
    with a tracked unimodular transform ``U`` (and its inverse).
    """

    def __init__(self, M: PolyMatrix, check=None):
        self.n = M.rows
        self._rows = M.sparse_rows()
        S = _Sparse.of(M)
        self._subs: list[tuple[int, dict[int, LaurentPoly]]] = []
        while True:
            if check is not None:
                check()
            piv = _pick_z_first(S)
            if piv is None:
                break
            i, _ = piv
            _, factors = S.eliminate(*piv)
            self._subs.append((i, {r: -f for r, f in factors.items()}))
        free, _, R = S.dense()
        self.free = free
        f = len(free)
        U = [[ONE if a == b else ZERO for b in range(f)] for a in range(f)]
        Uinv = [[ONE if a == b else ZERO for b in range(f)] for a in range(f)]
        ncols = len(R[0]) if R else 0
        prow = 0
        for j in range(ncols):
            if check is not None:
                check()
            while True:
                cand = [i for i in range(prow, f) if R[i][j]]
                if not cand:
                    break
                p = min(cand, key=lambda i: (R[i][j].span, i))
                if p != prow:
                    R[p], R[prow] = R[prow], R[p]
                    U[p], U[prow] = U[prow], U[p]
                    for row in Uinv:
                        row[p], row[prow] = row[prow], row[p]
                done = True
                piv = R[prow][j]
                for i in range(prow + 1, f):
                    if check is not None:
                        check()
                    if not R[i][j]:
                        continue
                    q, r = divmod_laurent(R[i][j], piv)
                    R[i] = [a - q * b for a, b in zip(R[i], R[prow])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[prow])]
                    for row in Uinv:
                        row[prow] = row[prow] + q * row[i]
                    if r:
                        done = False
                if done:
                    prow += 1
                    break
        self.rank_residual = prow
        self._U = U
        self._Uinv = Uinv
        self.rank = f - prow
        self._basis = None

    def _lift(self, vec: Sequence[LaurentPoly]) -> list[LaurentPoly]:
        v = {i: x for i, x in zip(self.free, vec) if x}
        for i, coeffs in reversed(self._subs):
            acc = ZERO
            for r, c in coeffs.items():
                x = v.get(r)
                if x:
                    acc = acc + c * x
            if acc:
                v[i] = acc
        return [v.get(i, ZERO) for i in range(self.n)]

    @property
    def basis(self) -> PolyMatrix:
        if self._basis is None:
            rows = [self._lift(self._U[k]) for k in range(self.rank_residual, len(self.free))]
            self._basis = PolyMatrix(rows, self.n)
        return self._basis

    def coordinates(self, vec: Sequence[LaurentPoly]) -> list[LaurentPoly]:
        """Coordinates of a kernel vector in :attr:`basis`."""
        acc_row: dict[int, LaurentPoly] = {}
        for i, x in enumerate(vec):
            if x:
                for j, m in self._rows[i].items():
                    acc_row[j] = acc_row.get(j, ZERO) + x * m
        if any(acc_row.values()):
            raise ValueError("vector is not in the kernel")
        w = [vec[i] for i in self.free]
        out = []
        nz = [(k, x) for k, x in enumerate(w) if x]
        for col in range(len(self.free)):
            acc = ZERO
            for k, x in nz:
                u = self._Uinv[k][col]
                if u:
                    acc = acc + x * u
            if col < self.rank_residual:
                if acc:
                    raise ValueError("vector is not in the kernel")
            else:
                out.append(acc)
        return out


def kernel_basis_q(M: PolyMatrix) -> PolyMatrix:
    """Rows form a free basis of the left kernel of ``M`` over Q[t^{±1}]."""
    return LeftKernel(M).basis


# -- Fitting ideals ------------------------------------------------------------


def minors_gcd(M: PolyMatrix, size: int, check=None) -> LaurentPoly:
    """Gcd over Z[t^{±1}] of all ``size x size`` minors (0 if they all vanish)."""
    if not 0 <= size <= min(M.rows, M.cols):
        raise ValueError(f"minor size {size} out of range for {M.rows}x{M.cols}")
    if M.ring != "INT":
        raise ValueError("minors_gcd expects an integer matrix")
    S = _Sparse.of(M)
    s = size
    # I_s(diag(u, S')) = I_{s-1}(S') when u is a unit of Z[t^±1]
    while s > 0:
        if check is not None:
            check()
        piv = S.find_unit(_is_unit_z)
        if piv is None:
            break
        S.eliminate(*piv)
        s -= 1
    if s == 0:
        return ONE
    rids = [i for i, row in S.rows.items() if row]
    cids = sorted(j for j, rs in S.cols.items() if rs)
    rids.sort()
    if len(rids) < s or len(cids) < s:
        return ZERO
    if comb(len(rids), s) * comb(len(cids), s) > MAX_MINORS:
        raise ValueError(
            f"too many {s}x{s} minors in a {len(rids)}x{len(cids)} residual"
        )
    g = ZERO
    for rs in combinations(rids, s):
        for cs in combinations(cids, s):
            if check is not None:
                check()
            m = _bareiss([[S.rows[i].get(j, ZERO) for j in cs] for i in rs])
            if m:
                g = gcd_z([g, m])
                if g == ONE:
                    return ONE
    return g
