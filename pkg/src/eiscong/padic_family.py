"""Taylor expansion of the higher coefficients of G*_k in the weight k.

For ``p`` not dividing ``d`` write ``<d> = d / omega(d) = 1 + p q_d``.  Then

    a_n(G*_k) = sum_M C(k, M) p^M c_M,   c_M = sum_{d | n, p !| d} q_d^M d^-1 omega(d)^l

for every even ``k = l mod (p-1)``, and expanding ``C(k, M)`` through the
signed Stirling numbers of the first kind regroups this as a power
series ``sum_m a_m k^m`` whose coefficients depend only on ``l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import _kernels
from .arith import (
    INF,
    ScaledResidue,
    angle_and_q,
    check_odd_prime,
    factorial_valuation,
    from_residue,
    inv_mod,
    teichmuller,
)
from .bernoulli import divisors
from .errors import InvalidArgument


@dataclass(frozen=True)
class Weight:
    """A point ``(s, u)`` of Z_p x Z/(p-1)Z, with ``s`` known mod ``p**W``."""

    p: int
    W: int
    s_part: int
    u_part: int

    @classmethod
    def from_int(cls, k: int, p: int, W: int) -> "Weight":
        return cls(p, W, k % p ** W, k % (p - 1))


@lru_cache(maxsize=None)
def stirling_falling(m: int) -> tuple[int, ...]:
    """Coefficients of ``k(k-1)...(k-m+1)`` in powers of ``k``, index = power."""
    if m < 0:
        raise InvalidArgument("m must be >= 0")
    row = [1]
    for j in range(m):
        # multiply by (k - j)
        nxt = [0] * (len(row) + 1)
        for i, c in enumerate(row):
            nxt[i + 1] += c
            nxt[i] -= j * c
        row = nxt
    return tuple(row)


def default_m_max(p: int, W: int) -> int:
    """Smallest cut-off with ``m - m/(p-1) >= W`` beyond it."""
    return math.ceil(W * (p - 1) / (p - 2))


@dataclass(frozen=True)
class TaylorCoeffs:
    n: int
    p: int
    l: int
    W: int
    m_max: int
    coeffs: tuple[ScaledResidue, ...]

    def residues(self) -> list[int]:
        """``a_m mod p**W`` for ``m = 0..m_max``."""
        mod = self.p ** self.W
        return [0 if c.is_zero else c.unit * self.p ** c.val % mod for c in self.coeffs]


def taylor_coeffs(n: int, p: int, l: int, W: int, m_max: int | None = None) -> TaylorCoeffs:
    """Coefficients ``a_m^{(n)}(p, l)`` modulo ``p**W``, ``m = 0..m_max``."""
    check_odd_prime(p)
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    if l % 2:
        raise InvalidArgument("branch l must be even")
    if W < 1:
        raise InvalidArgument("W must be >= 1")
    l %= p - 1
    if m_max is None:
        m_max = default_m_max(p, W)
    # absolute working precision: 2W keeps W unit digits for every a_m of
    # valuation < W; p^M/M! has nonnegative valuation so nothing is lost
    work = 2 * W + math.ceil(m_max / (p - 1)) + 1
    mod = p ** work
    units = [d for d in divisors(n) if d % p]
    terms = []
    for d in units:
        _, q = angle_and_q(d, p, work + 1)
        weight = inv_mod(d, mod) * pow(teichmuller(d, p, work).value, l, mod) % mod
        terms.append((q.value % mod, weight))
    # terms past M_top have valuation >= work, so a_0..a_m_max are exact mod p**work
    M_top = max(m_max, math.ceil(work * (p - 1) / (p - 2)))
    w = []
    for M in range(M_top + 1):
        c_M = sum(pow(q, M, mod) * wt for q, wt in terms) % mod
        e = factorial_valuation(M, p)
        fact_unit = math.factorial(M) // p ** e
        scale = pow(p, M - e, mod) * inv_mod(fact_unit, mod) % mod
        w.append(c_M * scale % mod)
    stir = [[c % mod for c in stirling_falling(M)] + [0] * (M_top - M) for M in range(M_top + 1)]
    a = _kernels.triangular_matvec(stir, w, mod)
    out = []
    for r in a[: m_max + 1]:
        c = from_residue(r, p, work)
        if c.val >= W:
            out.append(ScaledResidue(p, W, INF, 0))
        else:
            out.append(ScaledResidue(p, W, c.val, c.unit % p ** W))
    return TaylorCoeffs(n, p, l, W, m_max, tuple(out))


def eval_taylor(tc: TaylorCoeffs, k: int) -> ScaledResidue:
    """``sum_m a_m k^m mod p**W`` for a weight ``k`` on the branch ``tc.l``."""
    if k % (tc.p - 1) != tc.l:
        raise InvalidArgument(f"weight {k} is not on branch l = {tc.l} mod {tc.p - 1}")
    mod = tc.p ** tc.W
    return from_residue(_kernels.horner_mod(tc.residues(), k, mod), tc.p, tc.W)


@dataclass(frozen=True)
class BoundCheck:
    m: int
    certified: int | float  # min(val, W)
    general: float  # m - m/(p-1)
    general_ok: bool
    strong: int | None  # m, where p >= m + 2
    strong_ok: bool | None


def check_valuation_bounds(tc: TaylorCoeffs) -> list[BoundCheck]:
    """Audit ``v_p(a_m) >= m - m/(p-1)`` and, where ``p >= m+2``, ``v_p(a_m) >= m``.

    A coefficient known to ``W`` digits certifies only ``min(val, W)``, so
    bounds above ``W`` count as satisfied once the coefficient vanishes
    to working precision.
    """
    p, W = tc.p, tc.W
    out = []
    for m, c in enumerate(tc.coeffs):
        cert = min(c.val, W)
        general = m - m / (p - 1)
        general_ok = cert >= min(general, W)
        if p >= m + 2:
            strong, strong_ok = m, cert >= min(m, W)
        else:
            strong, strong_ok = None, None
        out.append(BoundCheck(m, cert, general, general_ok, strong, strong_ok))
    return out
