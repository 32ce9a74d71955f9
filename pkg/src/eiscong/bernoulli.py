"""Bernoulli numbers, divisor power sums and the constant term of G*_k.

Exact Bernoulli numbers come from the integer tangent-number recurrence
and are cached up to a configurable index budget.  Beyond the budget the
constant term ``a0(G*_k) = -(1 - p^(k-1)) B_k / (2k)`` is obtained by
index reduction along Kummer congruences.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import _kernels
from .arith import (
    INF,
    Residue,
    ScaledResidue,
    check_odd_prime,
    reduce_scaled,
    vp,
)
from .errors import BudgetError, InvalidArgument, PrecisionUnattainable

DEFAULT_BUDGET = 4000


def _tangent_numbers(n: int) -> list[int]:
    # Brent-Harvey: T[j] for j = 1..n, T[j] = |tan^(2j-1)(0)|
    T = [0] * (n + 1)
    if n >= 1:
        T[1] = 1
    for k in range(2, n + 1):
        T[k] = (k - 1) * T[k - 1]
    for k in range(2, n + 1):
        for j in range(k, n + 1):
            T[j] = (j - k) * T[j - 1] + (j - k + 2) * T[j]
    return T


class BernoulliCache:
    """Exact ``B_k`` for even ``k <= budget``.

    Readers are lock-free; extending the table is serialized.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self.table: dict[int, Fraction] = {0: Fraction(1)}
        self._top = 0
        self._lock = threading.Lock()

    def get(self, k: int) -> Fraction:
        if k < 0:
            raise InvalidArgument("Bernoulli index must be >= 0")
        if k == 1:
            return Fraction(-1, 2)
        if k % 2:
            return Fraction(0)
        if k > self.budget:
            raise BudgetError(k, self.budget)
        b = self.table.get(k)
        if b is None:
            self._extend(k)
            b = self.table[k]
        return b

    def _extend(self, k: int) -> None:
        with self._lock:
            if k <= self._top:
                return
            # grow geometrically: the recurrence is rerun from scratch
            top = min(self.budget, max(k, 2 * self._top))
            top -= top % 2
            n = top // 2
            T = _tangent_numbers(n)
            for j in range(1, n + 1):
                four = 4 ** j
                sign = 1 if j % 2 else -1
                self.table[2 * j] = Fraction(sign * 2 * j * T[j], four * (four - 1))
            self._top = top


DEFAULT_CACHE = BernoulliCache()


def bernoulli_exact(k: int, cache: BernoulliCache | None = None) -> Fraction:
    """Exact ``B_k`` with ``B_1 = -1/2``."""
    return (cache or DEFAULT_CACHE).get(k)


def bernoulli_recurrence(k_max: int) -> list[Fraction]:
    """``B_0..B_k_max`` from ``sum_{j<=k} C(k+1, j) B_j = 0``; slow, for checks."""
    B = [Fraction(1)]
    for k in range(1, k_max + 1):
        s = sum(comb(k + 1, j) * B[j] for j in range(k))
        B.append(-s / (k + 1))
    return B


# ------------------------------------------------------------ divisor sums


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma_pow(e: int, n: int, exclude_p: int | None = None) -> int:
    """``sum d**e`` over divisors of ``n``, skipping multiples of ``exclude_p``."""
    if n < 1:
        raise InvalidArgument("sigma_pow needs n >= 1")
    return sum(d ** e for d in divisors(n) if exclude_p is None or d % exclude_p)


def sigma_pow_mod(e: int, n: int, p: int, W: int, exclude_p: bool) -> Residue:
    mod = p ** W
    s = 0
    for d in divisors(n):
        if exclude_p and d % p == 0:
            continue
        s += pow(d, e, mod)
    return Residue(p, W, s % mod)


def sigma_table_mod(e: int, n_max: int, p: int, W: int, exclude_p: bool) -> list[int]:
    """``sigma_pow_mod`` for every ``n`` in ``1..n_max`` (index 0 holds 0)."""
    return _kernels.divisor_power_sieve(n_max, e, p, W, exclude_p)


# ------------------------------------------------------------ a0(G*_k)


@dataclass(frozen=True)
class A0Approx:
    """``a0(G*_k)`` congruent to ``rep`` modulo ``p**prec`` (``prec`` may be inf)."""

    k: int
    p: int
    rep: Fraction
    prec: int | float
    strategy: str
    k0: int | None = None
    modulus: int | None = None

    def note(self) -> str:
        if self.strategy == "A":
            return "A"
        return f"B(k0={self.k0}, mod={self.modulus})"


def _check_weight(k: int) -> None:
    if k < 4 or k % 2:
        raise InvalidArgument(f"a0_star needs an even weight >= 4, got {k}")


def reduced_index(k: int, modulus: int) -> int:
    """Least even ``k0 >= 4`` with ``k0 = k mod modulus`` (modulus even)."""
    k0 = k % modulus
    while k0 < 4:
        k0 += modulus
    return k0


def _pole_loss(k: int, p: int) -> int:
    # digits lost by the analytic part on the trivial-character branch
    if k % (p - 1):
        return 0
    return 2 if p == 3 else 0


def _a0_exact(k: int, p: int, cache: BernoulliCache) -> Fraction:
    return -(1 - Fraction(p) ** (k - 1)) * cache.get(k) / (2 * k)


def _a0_reduced(k: int, p: int, m: int, cache: BernoulliCache) -> A0Approx:
    modulus = (p - 1) * p ** m
    k0 = reduced_index(k, modulus)
    if k0 > cache.budget:
        raise PrecisionUnattainable(k, p, modulus, cache.budget)
    x0 = (1 - Fraction(p) ** (k0 - 1)) * cache.get(k0) / k0
    if k % (p - 1) == 0:
        pole = 1 - Fraction(1, p)
        # (1 - p^(k-1)) B_k / k - (1 - 1/p)/k is stable along the class
        x = pole / k + (x0 - pole / k0)
    else:
        x = x0
    return A0Approx(k, p, -x / 2, m + 1 - _pole_loss(k, p), "B", k0, modulus)


def a0_star_approx(
    k: int,
    p: int,
    prec: int,
    cache: BernoulliCache | None = None,
    strategy: str = "auto",
) -> A0Approx:
    """``a0(G*_k)`` to absolute precision ``p**prec`` (exact under strategy A)."""
    check_odd_prime(p)
    _check_weight(k)
    cache = cache or DEFAULT_CACHE
    if strategy == "A" or (strategy == "auto" and k <= cache.budget):
        return A0Approx(k, p, _a0_exact(k, p, cache), INF, "A")
    if strategy not in ("auto", "B"):
        raise InvalidArgument(f"unknown strategy {strategy!r}")
    m = max(prec - 1 + _pole_loss(k, p), 0)
    return _a0_reduced(k, p, m, cache)


def a0_star(
    k: int,
    p: int,
    W: int,
    cache: BernoulliCache | None = None,
    strategy: str = "auto",
) -> ScaledResidue:
    """``a0(G*_k) = -(1 - p^(k-1)) B_k / (2k)`` as a ScaledResidue.

    Strategy A reduces the exact value; strategy B replaces ``k`` by the
    least admissible ``k0 = k mod (p-1) p^m`` with
    ``m = W + v_p(2k) + 1``, raising :class:`PrecisionUnattainable` when
    ``k0`` would exceed the Bernoulli budget.
    """
    check_odd_prime(p)
    _check_weight(k)
    cache = cache or DEFAULT_CACHE
    if strategy == "A" or (strategy == "auto" and k <= cache.budget):
        base = reduce_scaled(-cache.get(k) / (2 * k), p, W)
        mod = p ** W
        return ScaledResidue(p, W, base.val, base.unit * (1 - pow(p, k - 1, mod)) % mod)
    if strategy not in ("auto", "B"):
        raise InvalidArgument(f"unknown strategy {strategy!r}")
    m = W + vp(2 * k, p) + 1
    while True:
        approx = _a0_reduced(k, p, m, cache)
        v = vp(approx.rep, p)
        if v != INF and v + W <= approx.prec:
            return reduce_scaled(approx.rep, p, W)
        # unexpectedly deep valuation: ask for more digits
        m += W if v == INF else v + W - approx.prec


def is_regular(k: int, p: int, cache: BernoulliCache | None = None) -> bool | None:
    """Whether ``p`` does not divide the numerator of ``B_k``.

    Decided on the representative of ``k mod (p-1)`` in ``{2, ..., p-3}``;
    ``None`` when ``k = 0 mod (p-1)``, where the notion does not apply.
    """
    check_odd_prime(p)
    if k % 2:
        raise InvalidArgument("regularity is defined for even k")
    j = k % (p - 1)
    if j == 0:
        return None
    return bernoulli_exact(j, cache).numerator % p != 0
