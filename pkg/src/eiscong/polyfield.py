"""Z[t] and the rational function field Q(t).

Polynomials are dense tuples of coefficients, lowest degree first.
:class:`RatFunc` keeps a reduced fraction with monic denominator after
every operation, so the t-adic valuation is a lookup of the lowest
nonzero coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from .arith import INF
from .errors import InvalidArgument, PoleError

Poly = tuple  # tuple[Fraction, ...], lowest degree first, no trailing zeros


def _trim(c) -> Poly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    return _trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def _pscale(a: Poly, c) -> Poly:
    return _trim(x * c for x in a)


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = Fraction(r[-1]) / lb
        q[shift] = c
        for j, y in enumerate(b):
            r[shift + j] -= c * y
        r = list(_trim(r))
    return _trim(q), _trim(r)


def _pmonic(a: Poly) -> Poly:
    return _pscale(a, 1 / Fraction(a[-1]))


def _pgcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a) if a else ()


def _peval(a: Poly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def _pval(a: Poly) -> int | float:
    for i, c in enumerate(a):
        if c:
            return i
    return INF


def _fmt_coef(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_str(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = Fraction(a[i])
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if i == 0:
            body = _fmt_coef(c)
        else:
            mono = "t" if i == 1 else f"t^{i}"
            body = mono if c == 1 else f"{_fmt_coef(c)}*{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


class IntPoly:
    """Element of Z[t]."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int]):
        coeffs = [Fraction(c) for c in coeffs]
        if any(c.denominator != 1 for c in coeffs):
            raise InvalidArgument("IntPoly needs integer coefficients")
        self.coeffs: tuple[int, ...] = _trim(int(c) for c in coeffs)

    @classmethod
    def t(cls) -> "IntPoly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        return _peval(self.coeffs, x)

    def to_ratfunc(self) -> "RatFunc":
        return RatFunc(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, RatFunc):
            return self.to_ratfunc() == other
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        return _poly_str(tuple(Fraction(c) for c in self.coeffs))

    def __repr__(self):
        return f"IntPoly({str(self)!r})"


Coercible = Union[int, Fraction, IntPoly, "RatFunc"]


class RatFunc:
    """Element of Q(t) in reduced form with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Sequence = (), den: Sequence = (1,)):
        n = _trim(Fraction(c) for c in num)
        d = _trim(Fraction(c) for c in den)
        if not d:
            raise ZeroDivisionError("rational function with zero denominator")
        if not n:
            self.num, self.den = (), (Fraction(1),)
            return
        g = _pgcd(n, d)
        if len(g) > 1:
            n = _pdivmod(n, g)[0]
            d = _pdivmod(d, g)[0]
        lead = d[-1]
        self.num = _pscale(n, 1 / lead)
        self.den = _pscale(d, 1 / lead)

    @staticmethod
    def coerce(x: Coercible) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, IntPoly):
            return x.to_ratfunc()
        if isinstance(x, (int, Fraction)):
            return RatFunc((x,))
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    @classmethod
    def t(cls) -> "RatFunc":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "RatFunc":
        return cls((c,))

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(_padd(self.num, o.num), self.den)
        return RatFunc(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(_pscale(self.num, -1), self.den)

    def __sub__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(_pmul(self.num, o.den), _pmul(self.den, o.num))

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return RatFunc((1,)) / (self ** (-e))
        num, den = (Fraction(1),), (Fraction(1),)
        bn, bd = self.num, self.den
        while e:
            if e & 1:
                num, den = _pmul(num, bn), _pmul(den, bd)
            bn, bd = _pmul(bn, bn), _pmul(bd, bd)
            e >>= 1
        return RatFunc(num, den)

    def __eq__(self, other):
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def is_integral_polynomial(self) -> bool:
        return self.is_polynomial() and all(c.denominator == 1 for c in self.num)

    def to_intpoly(self) -> IntPoly:
        if not self.is_integral_polynomial():
            raise InvalidArgument(f"{self} is not in Z[t]")
        return IntPoly([int(c) for c in self.num])

    def __call__(self, x):
        return eval_at(self, x)

    def __str__(self):
        if self.is_polynomial():
            return _poly_str(self.num)
        return f"({_poly_str(self.num)})/({_poly_str(self.den)})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def vt(h: Coercible) -> int | float:
    """t-adic valuation; ``math.inf`` for the zero function."""
    h = RatFunc.coerce(h)
    if h.is_zero():
        return INF
    return _pval(h.num) - _pval(h.den)


def eval_at(h: Coercible, x: int) -> Fraction:
    """Exact value ``h(x)``; raises :class:`PoleError` at a pole."""
    if isinstance(h, IntPoly):
        return Fraction(h(x))
    h = RatFunc.coerce(h)
    d = _peval(h.den, Fraction(x))
    if d == 0:
        raise PoleError(x)
    return Fraction(_peval(h.num, Fraction(x))) / d


def strip_t(h: Coercible) -> tuple[int, Fraction]:
    """Write ``h = t**d * q`` with ``q(0) != 0``; return ``(d, q(0))``."""
    h = RatFunc.coerce(h)
    if h.is_zero():
        raise InvalidArgument("strip_t is undefined for the zero function")
    a, b = _pval(h.num), _pval(h.den)
    return a - b, h.num[a] / h.den[b]


def integral_content(h: Coercible) -> tuple[int, int, Fraction]:
    """For ``h = t**d * c * A(t)/B(t)`` with A, B primitive in Z[t] and
    nonzero at 0, return ``(A(0), B(0), c)``.
    """
    from math import gcd, lcm

    h = RatFunc.coerce(h)
    if h.is_zero():
        raise InvalidArgument("integral_content is undefined for the zero function")

    def primitive(poly):
        poly = poly[_pval(poly):]
        den = lcm(*(c.denominator for c in poly))
        ints = [int(c * den) for c in poly]
        g = 0
        for c in ints:
            g = gcd(g, c)
        return ints[0] // g, Fraction(g, den)

    a0, ca = primitive(h.num)
    b0, cb = primitive(h.den)
    return a0, b0, ca / cb
