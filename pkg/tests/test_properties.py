"""Smoke tests for the seeded property suites (full scale runs in acceptance)."""

from delpezzo_lct import run_property_suites
from delpezzo_lct.properties import (
    run_blowup_transfer,
    run_convexity,
    run_monotonicity,
    run_oracle_equivalence,
    run_order_independence,
    run_skoda,
    run_theorem_disjunction,
)


def test_all_suites_pass_at_small_scale():
    report = run_property_suites(seed=7, cases=120)
    failing = [r for r in report.results if not r.passed]
    assert not failing, failing
    assert len(report.results) == 8


def test_reports_are_reproducible():
    a = run_property_suites(seed=3, cases=60)
    b = run_property_suites(seed=3, cases=60)
    assert a == b


def test_different_seeds_still_pass():
    for seed in (1, 2):
        report = run_property_suites(seed=seed, cases=60)
        assert report.passed


def test_individual_runner_counts():
    result = run_skoda(seed=5, cases=40)
    assert result.passed
    assert "40 instances" in result.computed


def test_targeted_runners():
    assert run_convexity(11, 50).passed
    assert run_monotonicity(11, 50).passed
    assert run_order_independence(11, 50).passed
    assert run_oracle_equivalence(11, 50).passed
    assert run_blowup_transfer(11, 50).passed
    assert run_theorem_disjunction(11, 50).passed
