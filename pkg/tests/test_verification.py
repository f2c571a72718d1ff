import random

import pytest

from models.report import CheckStatus
from services.groebner import GroebnerEngine
from services.verification import CHECKS, CheckContext, Outcome, check_seed, run_checks


@pytest.fixture
def ctx() -> CheckContext:
    return CheckContext(seed=7, samples=5, engine=GroebnerEngine(), survey_bound=20)


def test_registry_names_are_unique():
    names = [c.name for c in CHECKS]
    assert len(names) == len(set(names))
    assert "segre-implicitization" in names
    assert "claim-chart" in names


def test_check_seed_is_deterministic():
    assert check_seed(7, "cone-example") == check_seed(7, "cone-example")
    assert check_seed(7, "cone-example") != check_seed(7, "cubic-example")


def test_prefix_filter(ctx):
    report = run_checks(ctx, "scl-")
    assert [c.name for c in report.checks] == ["scl-roundtrip", "scl-coordinate-crossings"]
    assert all(c.status == CheckStatus.PASS for c in report.checks)
    assert report.checks[0].inputs["seed"] == check_seed(7, "scl-roundtrip")


def test_known_discrepancies_are_noted(ctx):
    report = run_checks(ctx, "claim-chart")
    [chart] = report.checks
    assert chart.status == CheckStatus.DISCREPANCY
    assert chart.note
    [family] = run_checks(ctx, "coplanar-family").checks
    assert family.status == CheckStatus.DISCREPANCY
    assert "(2, b, a-b, 0)" in family.note
    assert family.computed["corrected_row_is_center"] is True
    assert report.ok


def test_same_seed_same_report(ctx):
    first = run_checks(ctx, "cone-example")
    second = run_checks(ctx, "cone-example")
    assert first.model_dump() == second.model_dump()
    assert first.checks[0].status == CheckStatus.PASS


def test_exception_becomes_fail(ctx, monkeypatch):
    def broken(ctx: CheckContext, rng: random.Random) -> Outcome:
        raise ZeroDivisionError("boom")

    registered = next(c for c in CHECKS if c.name == "line-square-planar")
    monkeypatch.setattr(registered, "run", broken)
    [result] = run_checks(ctx, "line-square-planar").checks
    assert result.status == CheckStatus.FAIL
    assert result.note == "ZeroDivisionError: boom"
    assert not run_checks(ctx, "line-square-planar").ok


def test_survey_check_runs_maximal_minors():
    ctx = CheckContext(seed=11, samples=3, engine=GroebnerEngine(), survey_bound=100)
    [survey] = run_checks(ctx, "survey-never-full-rank").checks
    assert survey.computed["minor_checks"] == 3
    assert survey.computed["nonvanishing_minors"] == 0
    assert survey.status == CheckStatus.PASS
