"""Exact rationals, p-adic valuations and residue arithmetic modulo p^W.

Rationals are plain :class:`fractions.Fraction` values (ints are accepted
anywhere a rational is).  Quantities that may fail to be p-integral are
carried as a :class:`ScaledResidue`: a valuation together with a unit
known modulo ``p**W``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

from .errors import InvalidArgument

Rat = Fraction
RatLike = Union[int, Fraction]
INF = math.inf


@lru_cache(maxsize=4096)
def is_prime(n: int) -> bool:
    """Deterministic trial division; meant for desk-scale primes."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    if n % 3 == 0:
        return n == 3
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def primes_between(lo: int, hi: int) -> Iterator[int]:
    """Primes p with lo < p <= hi, ascending."""
    for n in range(max(lo + 1, 2), hi + 1):
        if is_prime(n):
            yield n


def check_odd_prime(p: int) -> None:
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise InvalidArgument(f"{p!r} is not an odd prime")


def _vp_int(n: int, p: int) -> int:
    v = 0
    # square the divisor while it still divides: O(log v) big divisions
    while n % p == 0:
        pk, e = p, 1
        while n % (pk * pk) == 0:
            pk *= pk
            e *= 2
        n //= pk
        v += e
    return v


def vp(x: RatLike, p: int) -> int | float:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    check_odd_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def inv_mod(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m``; raises if ``a`` is not a unit."""
    try:
        return pow(a, -1, m)
    except ValueError:
        raise InvalidArgument(f"{a} is not invertible modulo {m}") from None


def rat_mod(x: RatLike, m: int) -> int:
    """Image of a rational with unit denominator in Z/mZ."""
    x = Fraction(x)
    return x.numerator * inv_mod(x.denominator, m) % m


@dataclass(frozen=True)
class Residue:
    p: int
    W: int
    value: int

    def __post_init__(self):
        if self.W < 0 or not 0 <= self.value < self.p ** self.W:
            raise InvalidArgument(f"bad residue {self.value} mod {self.p}^{self.W}")

    @property
    def modulus(self) -> int:
        return self.p ** self.W

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class ScaledResidue:
    """``x = p**val * (unit + O(p**W))`` with ``unit`` a p-adic unit.

    ``val = inf`` stands for zero; for quantities only known modulo
    ``p**W`` it means "vanishes to the working precision".
    """

    p: int
    W: int
    val: int | float
    unit: int

    def __post_init__(self):
        mod = self.p ** self.W
        if self.val == INF:
            if self.unit != 0:
                raise InvalidArgument("zero ScaledResidue must have unit 0")
        elif not (0 <= self.unit < mod and self.unit % self.p != 0):
            raise InvalidArgument(f"{self.unit} is not a unit mod {self.p}^{self.W}")

    @property
    def is_zero(self) -> bool:
        return self.val == INF

    @property
    def abs_prec(self) -> int | float:
        """Exponent of the absolute precision this value is known to."""
        return self.W if self.val == INF else self.val + self.W

    def as_tuple(self):
        return (self.val, self.unit)

    def representative(self) -> Fraction:
        """A rational congruent to the value modulo ``p**abs_prec``."""
        if self.val == INF:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def residue(self) -> int:
        """The value modulo ``p**W``; requires ``val >= 0``."""
        if self.val == INF:
            return 0
        if self.val < 0:
            raise InvalidArgument("value is not p-integral")
        mod = self.p ** self.W
        return self.unit * pow(self.p, self.val, mod) % mod


def reduce_scaled(x: RatLike, p: int, W: int) -> ScaledResidue:
    """Normal form ``(v_p(x), x * p**-v_p(x) mod p**W)``."""
    if W < 1:
        raise InvalidArgument("precision W must be >= 1")
    x = Fraction(x)
    v = vp(x, p)
    if v == INF:
        return ScaledResidue(p, W, INF, 0)
    mod = p ** W
    num, den = x.numerator, x.denominator
    if v > 0:
        num //= p ** v
    elif v < 0:
        den //= p ** (-v)
    return ScaledResidue(p, W, v, num * inv_mod(den, mod) % mod)


def from_residue(r: int, p: int, W: int) -> ScaledResidue:
    """Scaled form of an integer known only modulo ``p**W``.

    The unit is meaningful to ``W - val`` digits; callers wanting full
    relative precision should compute ``r`` with extra digits.
    """
    mod = p ** W
    r %= mod
    if r == 0:
        return ScaledResidue(p, W, INF, 0)
    v = _vp_int(r, p)
    return ScaledResidue(p, W, v, (r // p ** v) % mod)


def teichmuller(d: int, p: int, W: int) -> Residue:
    """omega(d) mod p**W, computed as d**(p**(W-1))."""
    check_odd_prime(p)
    if d % p == 0:
        raise InvalidArgument(f"Teichmuller character undefined at {d} (p = {p})")
    mod = p ** W
    return Residue(p, W, pow(d, p ** (W - 1), mod))


def angle_and_q(d: int, p: int, W: int) -> tuple[Residue, Residue]:
    """Return ``(<d> mod p**W, q_d mod p**(W-1))`` where ``<d> = 1 + p*q_d``."""
    if W < 2:
        raise InvalidArgument("angle_and_q needs W >= 2")
    omega = teichmuller(d, p, W).value
    mod = p ** W
    angle = d * inv_mod(omega, mod) % mod
    assert angle % p == 1
    return Residue(p, W, angle), Residue(p, W - 1, (angle - 1) // p)


def factorial_valuation(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula."""
    v, q = 0, p
    while q <= n:
        v += n // q
        q *= p
    return v
