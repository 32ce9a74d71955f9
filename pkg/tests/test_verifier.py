import pytest

from eiscong.bernoulli import BernoulliCache
from eiscong.conditions import CongruenceProblem
from eiscong.errors import BoundViolation, PresetError, PrecisionUnattainable
from eiscong.polyfield import IntPoly
from eiscong.verifier import (
    build_preset,
    kummer_problem,
    verify_at_prime,
    verify_range,
    verify_star_parts,
    von_staudt_problem,
)

VS = von_staudt_problem(IntPoly([-1, 1]))
KUMMER = kummer_problem(IntPoly([3, 1]), IntPoly([3, 0, 0, 1]))


def test_von_staudt_single_prime():
    rep = verify_at_prime(VS, 7, n_max=20)
    assert rep.passed and rep.route == "exact" and rep.certified
    assert rep.margins[0] >= 1 and rep.precision == 3


def test_von_staudt_tightened_fails_at_constant_term():
    tight = CongruenceProblem(2, VS.f, VS.g, VS.g0)
    rep = verify_at_prime(tight, 5, n_max=10)
    assert not rep.passed
    assert rep.margins[0] == 1
    assert 0 in rep.failures()
    assert not rep.certified


def test_bound_is_enforced():
    with pytest.raises(BoundViolation):
        verify_at_prime(KUMMER, 5)


def test_kummer_routes_agree():
    for p in (7, 11, 13):
        exact = verify_at_prime(KUMMER, p, n_max=15, route="exact")
        star = verify_at_prime(KUMMER, p, n_max=15, route="star")
        assert exact.passed and star.passed
        assert exact.margins == star.margins
        assert star.route == "star"


def test_kummer_first_margins_at_7():
    rep = verify_at_prime(KUMMER, 7, n_max=6)
    assert rep.margins[:4] == (2, 4, 2, 2)


def test_strategy_b_over_budget():
    rep = verify_at_prime(KUMMER, 31, n_max=10)
    assert rep.passed and rep.route == "star"
    assert rep.strategies[2].startswith("B(k0=")
    # with guard 2 the class modulus 30*31^3 needs k0 past the budget,
    # so the verifier settles on N + 1 digits
    assert rep.precision == 3
    assert rep.strategies[2] == f"B(k0={29794 % (30 * 31 ** 2)}, mod={30 * 31 ** 2})"


def test_tiny_budget_is_reported():
    # even N digits need k0 = 29794 mod 930 = 34, past a budget of 30
    with pytest.raises(PrecisionUnattainable):
        verify_at_prime(KUMMER, 31, n_max=5, cache=BernoulliCache(30))


def test_range_is_ordered_and_thread_safe():
    one = verify_range(VS, 60, n_max=20)
    four = verify_range(VS, 60, n_max=20, workers=4)
    assert [r.p for r in one] == [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert [(r.p, r.margins) for r in one] == [(r.p, r.margins) for r in four]


def test_star_parts():
    rep = verify_star_parts(KUMMER, 31, n_max=10)
    assert rep.passed
    vs = verify_star_parts(VS, 11, n_max=10)
    assert vs.a0_passed and vs.an_passed


def test_presets():
    assert build_preset("von-staudt", f=IntPoly([-1, 1])).N == 1
    with pytest.raises(PresetError):
        build_preset("von-staudt", f=IntPoly([1, 1]))
    with pytest.raises(PresetError):
        build_preset("kummer", f=IntPoly([3, 1]), g=IntPoly([3, 1]))
    with pytest.raises(PresetError):
        build_preset("nope")


def test_e_presets():
    plan = build_preset("e-trivial", k=4, p=5, r=1)
    assert plan.run(20).passed
    plan = build_preset("e-kummer", k=4, p=7, r=2)
    assert plan.l == 46 and plan.run(20).passed
    with pytest.raises(PresetError, match="irregular"):
        build_preset("e-kummer", k=12, p=691, r=1)
    with pytest.raises(PresetError):
        build_preset("e-kummer", k=8, p=5, r=1)
    with pytest.raises(PresetError):
        build_preset("e-trivial", k=6, p=5, r=1)
