"""Exact univariate Laurent polynomials over the integers and rationals.

A :class:`LaurentPoly` is an immutable, finitely supported map from integer
exponents to exact coefficients (``int`` or :class:`fractions.Fraction`).
Zero coefficients are never stored, so the zero polynomial has empty support.

Polynomials in ``Z[t, t^-1]`` are only defined up to units ``±t^k``; the
canonical representative used everywhere in this package has minimum exponent
0 and a positive leading coefficient (see :func:`canonicalize`).
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """An exact Laurent polynomial in one variable ``t``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Coeff] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if isinstance(v, float):
                    raise TypeError("floating point coefficients are not allowed")
                v = _norm(Fraction(v) if not isinstance(v, (int, Fraction)) else v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        # caller guarantees: no zeros, normalized coefficients
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Coeff], low: int = 0) -> "LaurentPoly":
        """Build ``sum(coeffs[i] * t^(low + i))``."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, c: Coeff, k: int = 0) -> "LaurentPoly":
        return cls({k: c})

    # -- basic accessors -------------------------------------------------

    @property
    def coeffs(self) -> dict[int, Coeff]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __bool__(self) -> bool:
        return bool(self._c)

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    @property
    def span(self) -> int:
        """Degree of the canonical form, i.e. ``max_exp - min_exp``; -1 for zero."""
        if not self._c:
            return -1
        return max(self._c) - min(self._c)

    @property
    def lead(self) -> Coeff:
        return self._c[self.max_exp]

    @property
    def trail(self) -> Coeff:
        return self._c[self.min_exp]

    @property
    def is_integral(self) -> bool:
        return all(type(v) is int for v in self._c.values())

    @property
    def ring(self) -> str:
        return "INT" if self.is_integral else "RAT"

    def is_unit_q(self) -> bool:
        """Units of Q[t^{±1}] are the nonzero monomials."""
        return len(self._c) == 1

    def is_unit_z(self) -> bool:
        """Units of Z[t^{±1}] are ``±t^k``."""
        if len(self._c) != 1:
            return False
        (v,) = self._c.values()
        return v == 1 or v == -1

    def unit_inverse(self) -> "LaurentPoly":
        if len(self._c) != 1:
            raise ValueError(f"{self} is not a unit")
        ((e, v),) = self._c.items()
        inv = v if v in (1, -1) else _norm(Fraction(1) / v)
        return LaurentPoly._raw({-e: inv})

    def __call__(self, x):
        return sum(v * x ** e for e, v in self._c.items())

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            w = c.get(e)
            if w is None:
                c[e] = v
            else:
                s = _norm(w + v)
                if s:
                    c[e] = s
                else:
                    del c[e]
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: _norm(v * other) for e, v in self._c.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        if len(a) > len(b):
            a, b = b, a
        if len(a) == 1:
            ((i, x),) = a.items()
            return LaurentPoly._raw({i + j: _norm(x * y) for j, y in b.items()})
        if len(a) * len(b) > _KRONECKER_MIN and self.is_integral and other.is_integral:
            return _kronecker_mul(a, b)
        out: dict[int, Coeff] = {}
        for i, x in a.items():
            for j, y in b.items():
                k = i + j
                out[k] = out.get(k, 0) + x * y
        return LaurentPoly._raw({k: _norm(v) for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.unit_inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- content ---------------------------------------------------------

    def content(self) -> Coeff:
        """Positive rational ``c`` with ``self / c`` a primitive integer polynomial."""
        if not self._c:
            return 0
        num = 0
        den = 1
        for v in self._c.values():
            if type(v) is int:
                num = gcd(num, v)
            else:
                num = gcd(num, v.numerator)
                den = lcm(den, v.denominator)
        return _norm(Fraction(num, den))

    def primitive(self) -> "LaurentPoly":
        """``self / content``; keeps the sign and exponents."""
        if not self._c:
            return self
        c = self.content()
        if c == 1:
            return self
        return self * _norm(Fraction(1) / c)

    # -- display ---------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in sorted(self._c.items(), reverse=True):
            sign = "-" if v < 0 else "+"
            a = -v if v < 0 else v
            if e == 0:
                body = str(a)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __repr__(self):
        return f"LaurentPoly({self})"


_KRONECKER_MIN = 48


def _pack(c: dict[int, int], lo: int, n: int, kb: int) -> int:
    pos = bytearray(n * kb)
    neg = bytearray(n * kb)
    for e, v in c.items():
        i = (e - lo) * kb
        if v > 0:
            pos[i:i + kb] = v.to_bytes(kb, "little")
        else:
            neg[i:i + kb] = (-v).to_bytes(kb, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kronecker_mul(a: dict[int, int], b: dict[int, int]) -> "LaurentPoly":
    """Integer product by packing each polynomial into one big integer."""
    la, lb = min(a), min(b)
    na, nb = max(a) - la + 1, max(b) - lb + 1
    bound = max(abs(v) for v in a.values()) * max(abs(v) for v in b.values()) * min(len(a), len(b))
    kb = (bound.bit_length() + 2 + 7) // 8  # bytes per slot, room for the sign
    n = na + nb - 1
    C = _pack(a, la, na, kb) * _pack(b, lb, nb, kb)
    # bias every slot by half its range so all digits become nonnegative
    half = 1 << (8 * kb - 1)
    bias = int.from_bytes(half.to_bytes(kb, "little") * n, "little")
    raw = (C + bias).to_bytes(n * kb, "little")
    out = {}
    for i in range(n):
        d = int.from_bytes(raw[i * kb:(i + 1) * kb], "little") - half
        if d:
            out[la + lb + i] = d
    return LaurentPoly._raw(out)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly._raw({0: _norm(x)} if x else {})
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})


# -- normalization ----------------------------------------------------------


def canonicalize(p: LaurentPoly) -> LaurentPoly:
    """Representative of ``p`` up to ``±t^k``: min exponent 0, positive lead."""
    if not p:
        return p
    q = p.shift(-p.min_exp)
    return -q if q.lead < 0 else q


def canonicalize_q(p: LaurentPoly) -> LaurentPoly:
    """Representative of ``p`` up to units of Q[t^{±1}]: monic with min exponent 0."""
    if not p:
        return p
    q = p.shift(-p.min_exp)
    lead = q.lead
    return q if lead == 1 else q * _norm(Fraction(1) / lead)


def integral_lift(p: LaurentPoly) -> LaurentPoly:
    """Canonical primitive integer polynomial associated to ``p`` over Q."""
    return canonicalize(p.primitive())


def is_monic(p: LaurentPoly) -> bool:
    """True iff the top coefficient of ``p`` is a unit of Z (i.e. ``±1``).

    The zero polynomial is not monic.
    """
    if not p:
        return False
    if not p.is_integral:
        raise ValueError("monicness is only defined here for integer polynomials")
    c = canonicalize(p)
    return c.lead == 1 and c.content() == 1


# -- division ---------------------------------------------------------------


def _dense(p: LaurentPoly) -> tuple[int, list]:
    lo = p.min_exp
    hi = p.max_exp
    c = p._c
    return lo, [c.get(e, 0) for e in range(lo, hi + 1)]


def _from_dense(lo: int, cs) -> LaurentPoly:
    return LaurentPoly._raw({lo + i: _norm(v) for i, v in enumerate(cs) if v})


def _divmod_dense(a: list, b: list) -> tuple[list, list]:
    """Long division of ordinary polynomials (low-to-high coefficient lists)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    unit_lead = lb == 1 or lb == -1
    nq = len(a) - db
    if nq <= 0:
        return [], a
    q = [0] * nq
    for i in range(nq - 1, -1, -1):
        c = a[i + db]
        if not c:
            continue
        if unit_lead:
            c = c * lb
        elif type(c) is int and type(lb) is int and not c % lb:
            c = c // lb
        else:
            c = _norm(Fraction(c) / lb)
        q[i] = c
        for j, bj in enumerate(b):
            if bj:
                a[i + j] -= c * bj
    return q, a[:db]


def divmod_laurent(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division in Q[t^{±1}] with respect to the span.

    Returns ``(q, r)`` with ``a == q*b + r`` and ``r.span < b.span``.
    """
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    if not a:
        return ZERO, ZERO
    if len(b._c) == 1:
        return a * b.unit_inverse(), ZERO
    la, da = _dense(a)
    lb, db = _dense(b)
    q, r = _divmod_dense(da, db)
    return _from_dense(la - lb, q), _from_dense(la, r)


def exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return ``a / b`` in Q[t^{±1}]; raise ``ValueError`` if it is not exact."""
    q, r = divmod_laurent(a, b)
    if r:
        raise ValueError(f"{b} does not divide {a} in Q[t^±1]")
    return q


def divides(p: LaurentPoly, q: LaurentPoly) -> bool:
    """Does ``p`` divide ``q`` in Z[t^{±1}]?  Every ``p`` divides 0; 0 divides only 0."""
    if not q:
        return True
    if not p:
        return False
    quot, rem = divmod_laurent(q, p)
    return not rem and quot.is_integral


def divides_q(p: LaurentPoly, q: LaurentPoly) -> bool:
    """Divisibility in Q[t^{±1}]."""
    if not q:
        return True
    if not p:
        return False
    return not divmod_laurent(q, p)[1]


# -- gcd --------------------------------------------------------------------


def _content_int(a: list) -> int:
    g = 0
    for v in a:
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _strip(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _prem(a: list, b: list) -> list:
    """Pseudo-remainder of integer polynomials, then made primitive."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db:
        c = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
        _strip(a)
        if not a:
            return a
        g = _content_int(a)
        if g > 1:
            a = [x // g for x in a]
    return a


def _primitive_gcd(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    while b:
        if len(b) == 1:
            return [1]
        r = _prem(a, b)
        a, b = b, r
    g = _content_int(a)
    return [x // g for x in a]


def _ordinary(p: LaurentPoly) -> list:
    lo, cs = _dense(p)
    return cs


def gcd_z(ps: Iterable[LaurentPoly]) -> LaurentPoly:
    """Gcd in Z[t^{±1}], canonicalized; the gcd of only zeros is zero."""
    ps = list(ps)
    if not ps:
        raise ValueError("gcd of an empty list")
    nonzero = [p for p in ps if p]
    for p in nonzero:
        if not p.is_integral:
            raise ValueError("gcd_z expects integer polynomials")
    if not nonzero:
        return ZERO
    content = 0
    for p in nonzero:
        content = gcd(content, p.content())
    g = None
    for p in nonzero:
        prim = _ordinary(p.primitive())
        if g is None:
            g = prim
            g_c = _content_int(g)
            g = [x // g_c for x in g]
        else:
            g = _primitive_gcd(g, prim)
        if len(g) == 1:
            g = [1]
            break
    return canonicalize(_from_dense(0, g) * content)


def gcd_q(ps: Iterable[LaurentPoly]) -> LaurentPoly:
    """Gcd in Q[t^{±1}], monic with min exponent 0."""
    ps = [p for p in ps if p]
    if not ps:
        return ZERO
    g = None
    for p in ps:
        prim = _ordinary(integral_lift(p))
        g = prim if g is None else _primitive_gcd(g, prim)
        if len(g) == 1:
            return ONE
    return canonicalize_q(_from_dense(0, g))


# -- serialization ----------------------------------------------------------


def _coeff_str(v: Coeff) -> str:
    if type(v) is int:
        return str(v)
    return f"{v.numerator}/{v.denominator}"


def to_json(p: LaurentPoly) -> dict[str, str]:
    """``{"exponent": "coefficient"}`` in ascending exponent order."""
    return {str(e): _coeff_str(v) for e, v in sorted(p._c.items())}


def from_json(d: Mapping[str, str]) -> LaurentPoly:
    coeffs = {}
    for k, v in d.items():
        try:
            e = int(k)
        except ValueError:
            raise ValueError(f"bad exponent {k!r}") from None
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise ValueError(f"bad coefficient {v!r} for exponent {k}")
        if isinstance(v, str) and not re.fullmatch(r"\s*-?\d+(/\d+)?\s*", v):
            raise ValueError(f"bad coefficient {v!r} for exponent {k}")
        try:
            c = Fraction(v) if isinstance(v, str) else v
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"bad coefficient {v!r} for exponent {k}") from None
        coeffs[e] = c
    return LaurentPoly(coeffs)
