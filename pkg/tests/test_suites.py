import csv
import io
import json
import random

import pytest
from prometheus_client import REGISTRY

from knsuper.cli import suites
from knsuper.cli.models import Check, RunConfig, SuiteReport
from knsuper.cli.render import render_report
from knsuper.cli.suites import run_suite

TWO_POINT = dict(points=2, window=2, samples=3, seed=7)


def _ids(report):
    return [check.id for check in report.checks]


@pytest.mark.parametrize(
    "name",
    [
        "axioms",
        "cocycle2",
        "onecocycleL",
        "onecocycleJ",
        "duality",
        "locality",
        "connection-independence",
        "golden",
        "osp12",
        "nontriviality",
    ],
)
def test_two_point_suites_pass(name):
    report = run_suite(name, RunConfig(**TWO_POINT))
    assert report.checks
    assert report.passed, [c for c in report.checks if c.status == "fail"]


def test_three_point_golden_tables():
    report = run_suite("golden", RunConfig(points=3, window=2))
    assert _ids(report) == ["table-c2", "table-C1L", "table-C1J"]
    assert report.passed


def test_three_point_one_cocycles():
    run = RunConfig(points=3, window=2, samples=2, seed=1)
    assert run_suite("onecocycleJ", run).passed
    assert run_suite("osp12", run).passed


def test_uniqueness_suite():
    report = run_suite("uniqueness", RunConfig(window=4))
    assert report.passed
    assert "lambda_2^-2 = -2" in report.checks[0].detail


def test_residue_suite():
    report = run_suite("residues", RunConfig(samples=5, seed=3))
    assert _ids(report) == ["total-residue-zero", "printed-residues"]
    assert report.passed
    assert report.checks[0].detail == "5 samples"


def test_connection_ids_include_the_user_connection():
    run = RunConfig(points=2, window=1, samples=1, connection="z^(-3)")
    ids = _ids(run_suite("onecocycleL", run))
    assert ids == [
        "onecocycleL[R=0]",
        "onecocycleL[R=1]",
        "onecocycleL[R=z^(-1)]",
        "onecocycleL[R=z^(-2)]",
        "onecocycleL[R=z^(-3)]",
    ]


def test_all_prefixes_check_ids(monkeypatch):
    monkeypatch.setattr(suites, "SUITES", {
        "osp12": suites.suite_osp12,
        "uniqueness": suites.suite_uniqueness,
    })
    report = run_suite("all", RunConfig(points=2, window=2))
    assert _ids(report) == ["osp12/osp12-vanishing", "uniqueness/ak1-cocycle-unique"]


def test_checks_are_counted():
    labels = {"suite": "osp12", "status": "pass"}
    before = REGISTRY.get_sample_value("knsuper_checks_total", labels) or 0
    run_suite("osp12", RunConfig(points=2))
    assert REGISTRY.get_sample_value("knsuper_checks_total", labels) == before + 1


def test_failures_become_checks_instead_of_exceptions():
    def exploding() -> Check:
        raise suites.KNError("boom")

    check = suites._guarded("explodes", exploding)
    assert check.status == "fail"
    assert "boom" in check.detail


def test_sampled_reports_the_counterexample():
    cases = [("(1)", (1,)), ("(2)", (2,)), ("(3)", (3,))]
    check = suites._sampled("small", cases, lambda n: n < 2)
    assert check.status == "fail"
    assert check.detail == "counterexample (2) after 1 samples"


def test_report_rendering():
    report = SuiteReport(suite="demo", checks=[
        Check(id="one", status="pass", detail="fine"),
        Check(id="two", status="fail", detail="broken, badly"),
    ])
    assert not report.passed
    pretty = render_report(report, "pretty").splitlines()
    assert pretty[0] == "suite demo: FAIL"
    assert "[fail] two" in pretty[2]
    rows = list(csv.reader(io.StringIO(render_report(report, "csv"))))
    assert rows[0] == ["suite", "id", "status", "detail"]
    assert rows[2] == ["demo", "two", "fail", "broken, badly"]
    assert json.loads(render_report(report, "json"))["checks"][0]["id"] == "one"


def test_antialgebra_axioms_cover_every_basis_triple():
    report = run_suite("axioms", RunConfig(points=2, window=2, samples=3, seed=7))
    check = next(c for c in report.checks if c.id == "antialgebra-axioms")
    assert check.status == "pass"
    assert check.detail == f"{9 ** 3} samples"


@pytest.mark.parametrize("count", [1, 2, 3])
def test_pole_points_honour_the_drawn_count(count):
    first = suites._pole_points(random.Random(count), count)
    assert len(first) == count
    assert suites._pole_points(random.Random(count), count) == first
