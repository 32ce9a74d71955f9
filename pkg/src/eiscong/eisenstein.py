"""Truncated q-expansions of G_k, E_k and the p-adic family member G*_k."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .arith import INF, ScaledResidue, from_residue, reduce_scaled, vp
from .bernoulli import (
    BernoulliCache,
    a0_star,
    bernoulli_exact,
    sigma_pow,
    sigma_table_mod,
)
from .errors import InvalidArgument, PrecisionError

DEFAULT_NMAX = 50


@dataclass(frozen=True)
class QSeries:
    coeffs: tuple[Fraction, ...]

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)


@dataclass(frozen=True)
class ModSeries:
    coeffs: tuple[ScaledResidue, ...]
    p: int
    W: int

    def __post_init__(self):
        for c in self.coeffs:
            if (c.p, c.W) != (self.p, self.W):
                raise InvalidArgument("ModSeries entries must share (p, W)")

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return len(self.coeffs)


def _is_live_weight(k: int) -> bool:
    # G_k vanishes unless k is even and greater than 2
    return k % 2 == 0 and k >= 4


def g_series(k: int, n_max: int = DEFAULT_NMAX, cache: BernoulliCache | None = None) -> QSeries:
    """Exact ``G_k = -B_k/(2k) + sum sigma_{k-1}(n) q^n`` truncated at ``n_max``."""
    if n_max < 0:
        raise InvalidArgument("n_max must be >= 0")
    if not _is_live_weight(k):
        return QSeries(tuple(Fraction(0) for _ in range(n_max + 1)))
    a0 = -bernoulli_exact(k, cache) / (2 * k)
    return QSeries((a0,) + tuple(Fraction(sigma_pow(k - 1, n)) for n in range(1, n_max + 1)))


def e_series(k: int, n_max: int = DEFAULT_NMAX, cache: BernoulliCache | None = None) -> QSeries:
    """``E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n``."""
    if not _is_live_weight(k):
        raise InvalidArgument(f"E_k needs even k >= 4, got {k}")
    scale = -Fraction(2 * k) / bernoulli_exact(k, cache)
    return QSeries((Fraction(1),) + tuple(scale * sigma_pow(k - 1, n) for n in range(1, n_max + 1)))


def g_star_series_exact(
    k: int, p: int, n_max: int = DEFAULT_NMAX, cache: BernoulliCache | None = None
) -> QSeries:
    """Exact ``G*_k`` for ``k`` within the Bernoulli budget."""
    if not _is_live_weight(k):
        return QSeries(tuple(Fraction(0) for _ in range(n_max + 1)))
    a0 = -(1 - Fraction(p) ** (k - 1)) * bernoulli_exact(k, cache) / (2 * k)
    return QSeries(
        (a0,) + tuple(Fraction(sigma_pow(k - 1, n, exclude_p=p)) for n in range(1, n_max + 1))
    )


def g_star_series_mod(
    k: int, p: int, W: int, n_max: int = DEFAULT_NMAX, cache: BernoulliCache | None = None
) -> ModSeries:
    """``G*_k`` with every coefficient to relative precision ``W``.

    The constant term comes from :func:`a0_star`; the others are
    ``sigma*_{k-1}(n)`` computed modulo a power of ``p`` large enough to
    pin down ``W`` unit digits.
    """
    if not _is_live_weight(k):
        raise InvalidArgument(f"G*_k needs even k >= 4, got {k}")
    coeffs = [a0_star(k, p, W, cache)]
    if n_max >= 1:
        pending = list(range(1, n_max + 1))
        found: dict[int, ScaledResidue] = {}
        extra = W
        while pending:
            table = sigma_table_mod(k - 1, n_max, p, W + extra, True)
            still = []
            for n in pending:
                r = from_residue(table[n], p, W + extra)
                if r.val != INF and r.val <= extra:
                    found[n] = ScaledResidue(p, W, r.val, r.unit % p ** W)
                else:
                    still.append(n)
            pending = still
            extra *= 2
        coeffs.extend(found[n] for n in range(1, n_max + 1))
    return ModSeries(tuple(coeffs), p, W)


Series = Union[QSeries, ModSeries]


@dataclass(frozen=True)
class CongruenceCheck:
    p: int
    N: int
    margins: tuple  # v_p of each coefficient difference, capped at known precision
    exact: tuple  # whether each margin is the true valuation
    passed: bool

    @property
    def failures(self) -> list[int]:
        return [n for n, m in enumerate(self.margins) if m < self.N]


def _coeff_view(s: Series, n: int):
    c = s[n]
    if isinstance(s, QSeries):
        return Fraction(c), INF
    return c.representative(), c.abs_prec


def series_congruent(A: Series, B: Series, p: int, N: int) -> CongruenceCheck:
    """Coefficientwise ``A = B mod p^N``; margin_n is ``v_p(A_n - B_n)``."""
    if len(A) != len(B):
        raise InvalidArgument("series have different truncation orders")
    for s in (A, B):
        if isinstance(s, ModSeries) and s.W < N:
            raise PrecisionError(f"precision W = {s.W} is below the modulus exponent N = {N}")
    margins, exact = [], []
    for n in range(len(A)):
        a, pa = _coeff_view(A, n)
        b, pb = _coeff_view(B, n)
        known = min(pa, pb)
        v = vp(a - b, p)
        margins.append(min(v, known))
        exact.append(v < known or known == INF)
    return CongruenceCheck(p, N, tuple(margins), tuple(exact), all(m >= N for m in margins))


def qseries_to_mod(s: QSeries, p: int, W: int) -> ModSeries:
    return ModSeries(tuple(reduce_scaled(c, p, W) for c in s.coeffs), p, W)


def qseries_from(coeffs: Sequence) -> QSeries:
    return QSeries(tuple(Fraction(c) for c in coeffs))
