"""Sufficient conditions C1-C4 for a polynomial-index Eisenstein congruence.

A problem asks whether ``sum_i g_i(p) G_{f_i(p)} = g_0(p) mod p^N`` for
all large primes ``p``.  Every condition is a lower bound on the t-adic
valuation of an explicit element of Q(t), so the checks are exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import INF
from .bernoulli import BernoulliCache, bernoulli_exact
from .polyfield import IntPoly, RatFunc, vt
from .errors import InvalidArgument


@dataclass(frozen=True)
class CongruenceProblem:
    N: int
    f: tuple[IntPoly, ...]
    g: tuple[RatFunc, ...]
    g0: RatFunc

    def __post_init__(self):
        if not isinstance(self.N, int) or self.N < 1:
            raise InvalidArgument("N must be a positive integer")
        f = tuple(x if isinstance(x, IntPoly) else RatFunc.coerce(x).to_intpoly() for x in self.f)
        g = tuple(RatFunc.coerce(x) for x in self.g)
        if not f or len(f) != len(g):
            raise InvalidArgument("need equally many f_i and g_i, at least one")
        for i, fi in enumerate(f, 1):
            if fi.degree < 1 or fi.leading <= 0:
                raise InvalidArgument(
                    f"f_{i} = {fi} must be non-constant with positive leading coefficient"
                )
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "g0", RatFunc.coerce(self.g0))

    @property
    def n(self) -> int:
        return len(self.f)

    def f_at_one(self) -> list[int]:
        return [fi(1) for fi in self.f]

    def indices_with(self, l: int) -> list[int]:
        return [i for i, v in enumerate(self.f_at_one()) if v == l]

    def even_levels(self) -> list[int]:
        return sorted({v for v in self.f_at_one() if v % 2 == 0})


@dataclass(frozen=True)
class ConditionEntry:
    condition: str
    l: int | None
    m: int | None
    observed: int | float | None
    required: int | None
    passed: bool
    vacuous: bool = False

    def sort_key(self):
        return (
            self.condition,
            -INF if self.l is None else self.l,
            -1 if self.m is None else self.m,
        )


@dataclass(frozen=True)
class ConditionReport:
    M: int | float
    S1: tuple[int, ...]
    entries: tuple[ConditionEntry, ...]
    overall: bool
    ignored: tuple[int, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def failing(self) -> list[ConditionEntry]:
        return [e for e in self.entries if not e.passed]


def compute_M_S1(problem: CongruenceProblem) -> tuple[int | float, frozenset[int]]:
    M = min(vt(gi) for gi in problem.g)
    return M, frozenset(problem.f_at_one())


def _m_range(N: int, M, start: int) -> range:
    if M == INF:
        return range(0)
    return range(start, N - M + 1)


# -- the valuated combinations (shared with the bound computation) ---------


def c1_function(problem: CongruenceProblem, cache: BernoulliCache | None = None) -> RatFunc:
    t = RatFunc.t()
    h = problem.g0
    zero_terms = RatFunc.const(0)
    for i in problem.indices_with(0):
        zero_terms = zero_terms + problem.g[i] / problem.f[i].to_ratfunc()
    h = h + Fraction(1, 2) * (1 - 1 / t) * zero_terms
    for l in problem.even_levels():
        if l < 4:
            continue
        coef = bernoulli_exact(l, cache) / l
        tail = 1 - t ** (l - 1)
        for i in problem.indices_with(l):
            h = h + Fraction(1, 2) * coef * tail * problem.g[i]
    return h


def c2_function(problem: CongruenceProblem, l: int, m: int) -> RatFunc:
    h = RatFunc.const(0)
    for i in problem.indices_with(l):
        h = h + problem.g[i] * problem.f[i].to_ratfunc() ** m
    return h


def c3_function(problem: CongruenceProblem, l: int, m: int) -> RatFunc:
    h = RatFunc.const(0)
    for i in problem.indices_with(l):
        h = h + problem.g[i] * (problem.f[i].to_ratfunc() ** m - l ** m)
    return h


def c4_function(problem: CongruenceProblem, l: int) -> RatFunc:
    h = RatFunc.const(0)
    for i in problem.indices_with(l):
        h = h + problem.g[i]
    return h


def valuated_functions(problem: CongruenceProblem, cache: BernoulliCache | None = None):
    """Yield ``(condition, l, m, h, required)`` for every valuated function."""
    N = problem.N
    M, _ = compute_M_S1(problem)
    yield "C1", None, None, c1_function(problem, cache), N
    for l in problem.even_levels():
        if l <= 2:
            for m in _m_range(N, M, 0):
                yield "C2", l, m, c2_function(problem, l, m), N - m
    for l in problem.even_levels():
        if l >= 4:
            for m in _m_range(N, M, 1):
                yield "C3", l, m, c3_function(problem, l, m), N - m
    for l in problem.even_levels():
        if l >= 4:
            yield "C4", l, None, c4_function(problem, l), N


# -- the checks -------------------------------------------------------------


def _entry(cond, l, m, h, required) -> ConditionEntry:
    v = vt(h)
    return ConditionEntry(cond, l, m, v, required, v >= required)


def check_c1(problem: CongruenceProblem, cache: BernoulliCache | None = None) -> ConditionEntry:
    return _entry("C1", None, None, c1_function(problem, cache), problem.N)


def _levels(problem, low: bool) -> list[int]:
    return [l for l in problem.even_levels() if (l <= 2) == low]


def check_c2(problem: CongruenceProblem, M=None) -> list[ConditionEntry]:
    if M is None:
        M, _ = compute_M_S1(problem)
    levels = _levels(problem, True)
    if not levels:
        return [ConditionEntry("C2", None, None, None, None, True, vacuous=True)]
    out = []
    for l in levels:
        ms = _m_range(problem.N, M, 0)
        if not ms:
            out.append(ConditionEntry("C2", l, None, None, None, True, vacuous=True))
        for m in ms:
            out.append(_entry("C2", l, m, c2_function(problem, l, m), problem.N - m))
    return out


def check_c3(problem: CongruenceProblem, M=None) -> list[ConditionEntry]:
    if M is None:
        M, _ = compute_M_S1(problem)
    levels = _levels(problem, False)
    if not levels:
        return [ConditionEntry("C3", None, None, None, None, True, vacuous=True)]
    out = []
    for l in levels:
        ms = _m_range(problem.N, M, 1)
        if not ms:
            out.append(ConditionEntry("C3", l, None, None, None, True, vacuous=True))
        for m in ms:
            out.append(_entry("C3", l, m, c3_function(problem, l, m), problem.N - m))
    return out


def check_c4(problem: CongruenceProblem) -> list[ConditionEntry]:
    levels = _levels(problem, False)
    if not levels:
        return [ConditionEntry("C4", None, None, None, None, True, vacuous=True)]
    return [_entry("C4", l, None, c4_function(problem, l), problem.N) for l in levels]


def check_all(problem: CongruenceProblem, cache: BernoulliCache | None = None) -> ConditionReport:
    M, S1 = compute_M_S1(problem)
    entries = [check_c1(problem, cache)]
    entries += check_c2(problem, M) + check_c3(problem, M) + check_c4(problem)
    entries.sort(key=ConditionEntry.sort_key)
    ignored = tuple(i + 1 for i, v in enumerate(problem.f_at_one()) if v % 2)
    notes = []
    if M != INF and problem.N - M < 0:
        notes.append("N - M < 0: C2 and C3 m-ranges are empty and treated as vacuous")
    if ignored:
        notes.append("indices with odd f_i(1) enter no condition: " + ", ".join(map(str, ignored)))
    return ConditionReport(
        M=M,
        S1=tuple(sorted(S1)),
        entries=tuple(entries),
        overall=all(e.passed for e in entries),
        ignored=ignored,
        notes=tuple(notes),
    )


def make_problem(
    N: int,
    f: Iterable,
    g: Sequence,
    g0=0,
) -> CongruenceProblem:
    """Build a problem from polynomials, rationals or parsed expressions."""
    return CongruenceProblem(N, tuple(f), tuple(g), RatFunc.coerce(g0))
