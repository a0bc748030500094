"""Exact single-boost statistics and the multi-round scheduling engine."""
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coolspin import (
    CapacityError,
    CoolingPlan,
    InfeasibleError,
    boost_exact,
    conditional_polarization_after_cnot,
    plan_rounds,
    simulate_plan,
)
from coolspin.cooling import GATES_PER_BOOST

import oracles


@settings(max_examples=300, deadline=None)
@given(eps=st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_boost_marginals_match_closed_forms(eps):
    report = boost_exact(eps)
    assert report.eps_in == eps
    assert report.gate_count == GATES_PER_BOOST == 5
    assert report.eps_a == pytest.approx(eps * (3 - eps**2) / 2, abs=1e-12)
    assert report.eps_b == pytest.approx(eps * (1 + eps**2) / 2, abs=1e-12)
    assert report.eps_c == pytest.approx(-(eps**2), abs=1e-12)


def test_boost_against_independent_rational_oracle():
    for eps in (0.0, 0.25, 0.5, 0.9, 1.0):
        report = boost_exact(eps)
        want_a, want_b, want_c = oracles.boost_marginals(eps)
        assert report.eps_a == pytest.approx(want_a, abs=1e-14)
        assert report.eps_b == pytest.approx(want_b, abs=1e-14)
        assert report.eps_c == pytest.approx(want_c, abs=1e-14)


def test_boost_enhancement_limits():
    assert boost_exact(0.0).enhancement == 1.5
    assert boost_exact(0.5).enhancement == pytest.approx(1.375, abs=1e-15)
    assert boost_exact(1.0).enhancement == pytest.approx(1.0, abs=1e-15)
    with pytest.raises(ValueError):
        boost_exact(-0.1)
    with pytest.raises(ValueError):
        boost_exact(1.1)


def test_conditional_polarization_after_cnot():
    for eps in (0.0, 1e-5, 0.3, 0.5):
        cond0, cond1 = conditional_polarization_after_cnot(eps)
        assert cond0 == pytest.approx(2 * eps / (1 + eps**2), abs=1e-12)
        assert cond1 == 0.0
    # At full polarization the conditioning branch for a flipped control
    # never occurs; its conditional value reports as zero.
    assert conditional_polarization_after_cnot(1.0) == (1.0, 0.0)


def test_plan_rounds_single_triple():
    plan = plan_rounds(3, 1e-5, 1.4e-5)
    assert len(plan.rounds) == 1
    assert plan.rounds[0].triples == [(0, 1, 2)]
    assert plan.boost_gate_count == 5
    assert plan.refocus_gate_count == 0
    assert plan.total_gate_count == 5
    assert plan.predicted_best == pytest.approx(1.5e-5, rel=1e-4)


def test_plan_rounds_validation():
    with pytest.raises(ValueError, match="three spins"):
        plan_rounds(2, 1e-5, 1.4e-5)
    with pytest.raises(ValueError):
        plan_rounds(3, 0.0, 0.5)
    with pytest.raises(ValueError):
        plan_rounds(3, 1e-5, 1e-5)
    with pytest.raises(ValueError):
        plan_rounds(3, 1e-5, 1.5)


def test_plan_rounds_reports_unreachable_targets():
    with pytest.raises(InfeasibleError, match="unreachable"):
        plan_rounds(6, 1e-3, 2.2e-3)
    # n = 3 cannot go beyond one boost.
    with pytest.raises(InfeasibleError):
        plan_rounds(3, 1e-5, 2e-5)


def test_plan_two_round_cascade_structure():
    plan = plan_rounds(9, 1e-3, 0.99 * 2.25e-3)
    assert [r.triples for r in plan.rounds] == [
        [(0, 1, 2), (3, 4, 5), (6, 7, 8)],
        [(0, 3, 6)],
    ]
    assert plan.rounds[0].pool_eps == [1e-3, 1e-3, 1e-3]
    assert plan.rounds[1].pool_eps[0] == pytest.approx(1.5e-3, rel=1e-5)
    assert plan.boost_gate_count == 20
    assert plan.refocus_gate_count == 12
    assert plan.total_gate_count == 32


def test_triples_within_a_round_never_share_spins():
    plan = plan_rounds(27, 1e-5, 0.99 * 1.5**3 * 1e-5)
    for rnd in plan.rounds:
        seen = [s for triple in rnd.triples for s in triple]
        assert len(seen) == len(set(seen))
        assert all(0 <= s < 27 for s in seen)


def test_recycling_reuses_partially_cooled_spins():
    plan = plan_rounds(9, 1e-3, 0.99 * 2.25e-3, recycle=True)
    assert [r.triples for r in plan.rounds] == [
        [(0, 1, 2), (3, 4, 5), (6, 7, 8)],
        [(0, 3, 6), (1, 4, 7)],
    ]
    # The extra triple costs gates but removes idle-spin refocusing.
    assert plan.boost_gate_count == 25
    assert plan.total_gate_count == 31


def test_plan_round_trips_through_dict():
    plan = plan_rounds(9, 1e-3, 2.2e-3, labels=list("abcdefghi"))
    again = CoolingPlan.from_dict(plan.to_dict())
    assert again.labels == list("abcdefghi")
    assert again.n == plan.n
    assert [r.triples for r in again.rounds] == [r.triples for r in plan.rounds]
    assert again.total_gate_count == plan.total_gate_count


def test_simulation_modes_agree_at_low_polarization():
    plan = plan_rounds(9, 1e-3, 0.99 * 2.25e-3)
    both = simulate_plan(plan, mode="both")
    spin, best = both.best()
    assert spin == 0
    assert best == pytest.approx(0.00225, rel=1e-3)
    assert both.discrepancy < 1e-12
    assert both.eps_exact[0] == pytest.approx(oracles.two_round_cascade_n9(1e-3), abs=1e-12)

    only_exact = simulate_plan(plan, mode="exact")
    assert only_exact.eps_approx is None
    assert only_exact.eps_exact[0] == both.eps_exact[0]
    with pytest.raises(ValueError):
        simulate_plan(plan, mode="bogus")


def test_exact_simulation_respects_population_capacity():
    plan = plan_rounds(27, 1e-5, 1.4e-5)
    with pytest.raises(CapacityError):
        simulate_plan(plan, mode="exact")
    # The first-order engine has no such ceiling.
    result = simulate_plan(plan, mode="approx")
    assert result.eps_approx is not None


def test_gate_totals_track_quasi_linear_growth():
    totals = []
    sizes = [3, 9, 27, 81, 243]
    for k, n in enumerate(sizes):
        target = 0.99 * 1.5 ** (k + 1) * 1e-5
        totals.append(plan_rounds(n, 1e-5, target).total_gate_count)
    assert totals == [5, 32, 149, 608, 2309]
    x = np.log(np.asarray(sizes, dtype=float))
    y = np.log(np.asarray(totals, dtype=float) / np.log2(sizes))
    slope = np.polyfit(x, y, 1)[0]
    assert slope == pytest.approx(1.0288, abs=1e-3)


def test_boost_approximation_error_is_third_order():
    # eps_out - 1.5 eps = -eps**3 / 2 exactly, so the first-order engine's
    # error per boost shrinks cubically.
    for eps in (1e-2, 1e-3):
        report = boost_exact(eps)
        assert report.eps_a - 1.5 * eps == pytest.approx(-(eps**3) / 2, rel=1e-6)
    exact_digits = math.log10(abs(boost_exact(1e-3).eps_a - 1.5e-3))
    assert exact_digits == pytest.approx(math.log10(0.5e-9), abs=0.01)
