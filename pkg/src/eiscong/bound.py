"""Effective prime threshold P above which the congruence is certified."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import INF
from .bernoulli import BernoulliCache
from .conditions import CongruenceProblem, compute_M_S1, valuated_functions
from .polyfield import IntPoly, RatFunc, integral_content, strip_t


@dataclass(frozen=True)
class BoundBreakdown:
    b1: int  # N - M + 3
    b2: int  # max |f_i(1)| + 1
    b3: int  # f_i(j) > max(3, N) for every j > b3
    b4: int  # numerator/denominator of |h_i(0)| for g_i = t^d_i h_i
    b5: int  # same for every valuated function of C1-C4
    b6: int  # integrality refinement, see integrality_threshold
    P: int

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("b1", "b2", "b3", "b4", "b5", "b6", "P")}


def collect_valuated_functions(
    problem: CongruenceProblem, cache: BernoulliCache | None = None
) -> list[RatFunc]:
    """Nonzero functions whose t-adic valuations C1-C4 constrain."""
    return [h for _, _, _, h, _ in valuated_functions(problem, cache) if not h.is_zero()]


def _height(x: Fraction) -> int:
    x = abs(Fraction(x))
    return max(x.numerator, x.denominator)


def leading_threshold(f: IntPoly, T: int) -> int:
    """Least ``P >= 0`` with ``f(j) > T`` for every integer ``j > P``.

    Starts from the Cauchy bound on the roots of ``f - T`` and scans down.
    """
    c = list(f.coeffs)
    c[0] -= T
    lead = c[-1]
    # every real root of f - T has |x| < 1 + max|c_j| / lead
    R = 1 + max(abs(x) for x in c[:-1]) // lead + 1
    P = R
    while P > 0 and f(P) > T:
        P -= 1
    return P


def integrality_threshold(h: RatFunc) -> int:
    """Bound past which ``v_p(q(p)) = 0`` for ``h = t^d q``.

    Writing ``q = c A/B`` with A, B primitive integer polynomials,
    ``A(p) = A(0) mod p`` and likewise for B, so primes above
    ``|A(0)|, |B(0)|`` and the height of ``c`` see a p-adic unit.
    """
    a0, b0, c = integral_content(h)
    return max(abs(a0), abs(b0), _height(c))


def compute_P(problem: CongruenceProblem, cache: BernoulliCache | None = None) -> BoundBreakdown:
    N = problem.N
    M, _ = compute_M_S1(problem)
    b1 = 0 if M == INF else N - M + 3
    b2 = max(abs(v) for v in problem.f_at_one()) + 1
    T = max(3, N)
    b3 = max(leading_threshold(fi, T) for fi in problem.f)
    nonzero_g = [gi for gi in problem.g if not gi.is_zero()]
    b4 = max((_height(strip_t(gi)[1]) for gi in nonzero_g), default=0)
    hs = collect_valuated_functions(problem, cache)
    b5 = max((_height(strip_t(h)[1]) for h in hs), default=0)
    b6 = max((integrality_threshold(h) for h in nonzero_g + hs), default=0)
    P = max(b1, b2, b3, b4, b5, b6, 1)
    return BoundBreakdown(b1, b2, b3, b4, b5, b6, P)
