"""Empirical verification of polynomial-index Eisenstein congruences.

For a prime ``p`` above the certified bound we evaluate

    Delta(p) = sum_i g_i(p) G_{f_i(p)} - g_0(p)

coefficient by coefficient and report ``v_p`` of each coefficient.  When
every weight ``f_i(p)`` lies within the Bernoulli budget this is done in
exact rational arithmetic.  Otherwise each ``G_k`` is replaced by the
p-adic family member ``G*_k``, which agrees with it to far more digits
than needed once ``f_i(p) - 1 >= N``.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import INF, check_odd_prime, is_prime, primes_between, vp
from .bernoulli import (
    DEFAULT_CACHE,
    BernoulliCache,
    a0_star_approx,
    is_regular,
    sigma_pow,
    sigma_table_mod,
)
from .bound import compute_P
from .conditions import CongruenceProblem, check_all
from .eisenstein import CongruenceCheck, e_series, series_congruent
from .errors import (
    BoundViolation,
    InvalidArgument,
    PrecisionError,
    PrecisionUnattainable,
    PresetError,
)
from .polyfield import IntPoly, RatFunc, eval_at, vt

DEFAULT_GUARD = 2


@dataclass
class VerifyReport:
    p: int
    N: int
    n_max: int
    margins: tuple  # v_p of each Delta coefficient, capped at `precision`
    passed: bool
    precision: int | float  # digits actually resolved; margins above it are ">="
    route: str  # "exact" or "star"
    strategies: dict = field(default_factory=dict)  # index i -> a0 strategy note
    certified: bool = True  # whether C1-C4 hold for the problem
    seconds: float = 0.0

    def failures(self) -> list[int]:
        return [n for n, m in enumerate(self.margins) if m < self.N]


@dataclass
class StarReport:
    p: int
    N: int
    a0_margin: int | float
    a0_passed: bool
    an_margins: tuple  # n = 1..n_max
    an_passed: bool
    precision: int | float

    @property
    def passed(self) -> bool:
        return self.a0_passed and self.an_passed


def _live(k: int) -> bool:
    return k % 2 == 0 and k >= 4


def _check_prime(problem: CongruenceProblem, p: int, cache) -> int:
    check_odd_prime(p)
    P = compute_P(problem, cache).P
    if p <= P:
        raise BoundViolation(p, P)
    return P


def _exact_delta(problem, p, n_max, cache):
    gp = [eval_at(gi, p) for gi in problem.g]
    ks = [fi(p) for fi in problem.f]
    delta = [Fraction(0)] * (n_max + 1)
    delta[0] = -eval_at(problem.g0, p)
    for gi, k in zip(gp, ks):
        if not gi or not _live(k):
            continue
        delta[0] += gi * (-cache.get(k) / (2 * k))
        for n in range(1, n_max + 1):
            delta[n] += gi * sigma_pow(k - 1, n)
    return delta


def _star_delta(problem, p, n_max, prec, cache, gk_substitute):
    """Representatives of the G* sums and the precision they are good to.

    With ``gk_substitute`` the result stands in for the G-sums, so the
    precision is also capped by ``v_p(G_k - G*_k)``.
    """
    gp = [eval_at(gi, p) for gi in problem.g]
    ks = [fi(p) for fi in problem.f]
    delta = [Fraction(0)] * (n_max + 1)
    delta[0] = -eval_at(problem.g0, p)
    achieved = INF
    notes = {}
    for i, (gi, k) in enumerate(zip(gp, ks), 1):
        if not gi or not _live(k):
            continue
        v_g = vp(gi, p)
        need = prec - v_g
        a0 = a0_star_approx(k, p, need, cache)
        notes[i] = a0.note()
        delta[0] += gi * a0.rep
        achieved = min(achieved, a0.prec + v_g)
        if n_max >= 1:
            digits = max(need, 1)
            table = sigma_table_mod(k - 1, n_max, p, digits, True)
            for n in range(1, n_max + 1):
                delta[n] += gi * table[n]
            achieved = min(achieved, digits + v_g)
        if gk_substitute:
            # G_k - G*_k = p^(k-1) (a0(G_k) + sum over p | d of (d/p)^(k-1) ...)
            # a0 part has v_p >= k - 2 - v_p(k), the rest >= k - 1
            achieved = min(achieved, k - 2 - vp(k, p) + v_g)
    return delta, achieved, notes


def _within_budget(problem, p, cache) -> bool:
    return all(not _live(k) or k <= cache.budget for k in (fi(p) for fi in problem.f))


def _margins(delta, p, cap):
    return tuple(min(vp(d, p), cap) for d in delta)


def verify_at_prime(
    problem: CongruenceProblem,
    p: int,
    n_max: int = 50,
    guard: int = DEFAULT_GUARD,
    cache: BernoulliCache | None = None,
    route: str = "auto",
    certified: bool | None = None,
) -> VerifyReport:
    """Check ``sum g_i(p) G_{f_i(p)} = g_0(p) mod p^N`` coefficientwise."""
    cache = cache or DEFAULT_CACHE
    _check_prime(problem, p, cache)
    if certified is None:
        certified = check_all(problem, cache).overall
    start = time.perf_counter()
    N = problem.N
    target = N + guard
    if route == "exact" or (route == "auto" and _within_budget(problem, p, cache)):
        delta = _exact_delta(problem, p, n_max, cache)
        margins = _margins(delta, p, target)
        notes = {i: "exact" for i, fi in enumerate(problem.f, 1) if _live(fi(p))}
        used, precision = "exact", target
    else:
        # lower the guard digit by digit when the budget cannot reach it
        for prec in range(target, N - 1, -1):
            try:
                delta, achieved, notes = _star_delta(problem, p, n_max, prec, cache, True)
                break
            except PrecisionUnattainable:
                if prec == N:
                    raise
        precision = min(prec, achieved)
        if precision < N:
            raise PrecisionError(f"only {precision} digits reachable at p = {p}, need {N}")
        margins = _margins(delta, p, precision)
        used = "star"
    return VerifyReport(
        p=p,
        N=N,
        n_max=n_max,
        margins=margins,
        passed=all(m >= N for m in margins),
        precision=precision,
        route=used,
        strategies=notes,
        certified=certified,
        seconds=time.perf_counter() - start,
    )


def verify_range(
    problem: CongruenceProblem,
    p_max: int,
    n_max: int = 50,
    guard: int = DEFAULT_GUARD,
    cache: BernoulliCache | None = None,
    workers: int = 1,
) -> list[VerifyReport | Exception]:
    """Reports for every prime in ``(P, p_max]``, ascending.

    Failures to compute at one prime are returned in its slot rather than
    raised.
    """
    cache = cache or DEFAULT_CACHE
    P = compute_P(problem, cache).P
    certified = check_all(problem, cache).overall
    primes = [p for p in primes_between(max(P, 2), p_max)]

    def one(p):
        try:
            return verify_at_prime(problem, p, n_max, guard, cache, certified=certified)
        except (PrecisionError, InvalidArgument) as exc:
            return exc

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, primes))
    return [one(p) for p in primes]


def verify_star_parts(
    problem: CongruenceProblem,
    p: int,
    n_max: int = 50,
    guard: int = DEFAULT_GUARD,
    cache: BernoulliCache | None = None,
) -> StarReport:
    """Constant term against ``g_0(p)`` and higher terms against 0, both for G*."""
    cache = cache or DEFAULT_CACHE
    _check_prime(problem, p, cache)
    N = problem.N
    for prec in range(N + guard, N - 1, -1):
        try:
            delta, achieved, _ = _star_delta(problem, p, n_max, prec, cache, False)
            break
        except PrecisionUnattainable:
            if prec == N:
                raise
    precision = min(prec, achieved)
    margins = _margins(delta, p, precision)
    a0m, anm = margins[0], margins[1:]
    return StarReport(p, N, a0m, a0m >= N, anm, all(m >= N for m in anm), precision)


# ---------------------------------------------------------------- presets


def _as_poly(x) -> IntPoly:
    if isinstance(x, IntPoly):
        return x
    return RatFunc.coerce(x).to_intpoly()


def _admissible(f: IntPoly, name: str) -> None:
    if f.degree < 1 or f.leading <= 0:
        raise PresetError(f"{name} = {f} must be non-constant with positive leading coefficient")


def von_staudt_problem(f) -> CongruenceProblem:
    """``2 p f(p) G_{f(p)} = 1 mod p`` for ``f(1) = 0``."""
    f = _as_poly(f)
    _admissible(f, "f")
    if f(1) != 0:
        raise PresetError(f"von Staudt preset needs f(1) = 0, got f(1) = {f(1)}")
    t = RatFunc.t()
    return CongruenceProblem(1, (f,), (2 * t * f.to_ratfunc(),), RatFunc.const(1))


def kummer_problem(f, g) -> CongruenceProblem:
    """``G_{f(p)} = G_{g(p)} mod p^(d+1)`` with ``t^d`` the exact power dividing ``f - g``."""
    f, g = _as_poly(f), _as_poly(g)
    _admissible(f, "f")
    _admissible(g, "g")
    if f == g:
        raise PresetError("Kummer preset needs distinct f and g")
    if f(1) != g(1) or f(1) == 0:
        raise PresetError(f"Kummer preset needs f(1) = g(1) != 0, got {f(1)} and {g(1)}")
    d = vt(f.to_ratfunc() - g.to_ratfunc())
    return CongruenceProblem(d + 1, (f, g), (RatFunc.const(1), RatFunc.const(-1)), RatFunc.const(0))


@dataclass(frozen=True)
class ESeriesPlan:
    """A direct check ``E_k = 1`` or ``E_k = E_l`` modulo ``p^r``."""

    kind: str  # "e-trivial" or "e-kummer"
    p: int
    r: int
    k: int
    l: int | None = None

    def run(self, n_max: int = 50, cache: BernoulliCache | None = None) -> CongruenceCheck:
        lhs = e_series(self.k, n_max, cache)
        if self.kind == "e-trivial":
            from .eisenstein import qseries_from

            rhs = qseries_from([1] + [0] * n_max)
        else:
            rhs = e_series(self.l, n_max, cache)
        return series_congruent(lhs, rhs, self.p, self.r)


def e_trivial_plan(k: int, p: int, r: int) -> ESeriesPlan:
    check_odd_prime(p)
    if r < 1 or k < r + 1 or k % 2:
        raise PresetError(f"E-preset needs even k >= r + 1 with r >= 1 (k={k}, r={r})")
    if k % ((p - 1) * p ** (r - 1)):
        raise PresetError(f"E_k = 1 mod p^r needs k = 0 mod (p-1)p^(r-1); k={k}, p={p}, r={r}")
    return ESeriesPlan("e-trivial", p, r, k)


def e_kummer_plan(k: int, l: int, p: int, r: int, cache: BernoulliCache | None = None) -> ESeriesPlan:
    check_odd_prime(p)
    for x in (k, l):
        if x % 2 or x < r + 1 or x < 4:
            raise PresetError(f"E-preset needs even weights >= max(4, r + 1); got {x}")
    if (k - l) % ((p - 1) * p ** (r - 1)):
        raise PresetError(f"E_k = E_l mod p^r needs k = l mod (p-1)p^(r-1); k={k}, l={l}, p={p}")
    regular = is_regular(k, p, cache)
    if regular is None:
        raise PresetError(f"regularity is not defined for k = 0 mod p-1 (k={k}, p={p})")
    if not regular:
        raise PresetError(f"(k, p) = ({k}, {p}) is irregular: p divides the numerator of B_k")
    return ESeriesPlan("e-kummer", p, r, k, l)


PRESETS = ("von-staudt", "kummer", "e-trivial", "e-kummer")


def build_preset(name: str, **params):
    """Build a preset problem (or, for the E-series presets, a check plan)."""
    if name == "von-staudt":
        return von_staudt_problem(params["f"])
    if name == "kummer":
        return kummer_problem(params["f"], params["g"])
    if name == "e-trivial":
        return e_trivial_plan(params["k"], params["p"], params["r"])
    if name == "e-kummer":
        p, r, k = params["p"], params["r"], params["k"]
        l = params.get("l")
        if l is None:
            l = k + (p - 1) * p ** (r - 1)
        return e_kummer_plan(k, l, p, r, params.get("cache"))
    raise PresetError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")
