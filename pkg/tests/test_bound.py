import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from eiscong.arith import vp
from eiscong.bound import compute_P, leading_threshold
from eiscong.polyfield import IntPoly, RatFunc, eval_at, vt
from eiscong.conditions import make_problem
from eiscong.verifier import kummer_problem, von_staudt_problem

from oracles import random_problem, transfer_failures

t = RatFunc.t()


def test_preset_bounds():
    vs = compute_P(von_staudt_problem(IntPoly([-1, 1])))
    assert vs.P == 4
    km = compute_P(kummer_problem(IntPoly([3, 1]), IntPoly([3, 0, 0, 1])))
    assert km.P == 6
    assert km.as_dict() == {"b1": 5, "b2": 5, "b3": 0, "b4": 1, "b5": 6, "b6": 6, "P": 6}


def test_integrality_refinement_is_needed():
    # q(0) = 1 passes the constant-term bullet, but q(7) = 7 for q = 1 + 6t/7
    g = 1 + Fraction(6, 7) * t
    assert vp(eval_at(g, 7), 7) == 1 != vt(g)
    bd = compute_P(make_problem(1, [IntPoly([3, 1])], [g], 0))
    assert bd.b4 == 1 and bd.b6 >= 7 and bd.P >= 7


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=1, max_size=4), st.integers(1, 4), st.integers(1, 30))
def test_leading_threshold_matches_scan(lower, lead, T):
    f = IntPoly(lower + [lead])
    P = leading_threshold(f, T)
    assert P >= 0
    assert all(f(j) > T for j in range(P + 1, P + 400))
    if P > 0:
        assert f(P) <= T


@pytest.mark.parametrize("seed", range(12))
def test_valuation_transfer_above_P(seed):
    prob = random_problem(random.Random(seed))
    P = compute_P(prob).P
    assert transfer_failures(prob, P) == []


def test_raising_N_never_lowers_P():
    rng = random.Random(99)
    for _ in range(10):
        prob = random_problem(rng)
        lo = compute_P(prob).P
        hi = compute_P(make_problem(prob.N + 2, prob.f, prob.g, prob.g0)).P
        assert hi >= lo
