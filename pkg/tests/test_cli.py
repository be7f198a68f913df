import json

import pytest
from click.testing import CliRunner

from knsuper import __version__
from knsuper.cli import suites
from knsuper.cli.app import cli
from knsuper.cli.models import Check


@pytest.fixture
def invoke():
    runner = CliRunner()

    def _invoke(*args):
        return runner.invoke(cli, list(args), prog_name="knsuper")

    return _invoke


@pytest.mark.parametrize(
    "args, expected",
    [
        (("eval", "c2(V[2], V[-2])"), "-6"),
        (("--points", "2", "eval", "bracket(e[1], e[-1])"), "-2*e[0]"),
        (("eval", "C1J(G[3])"), "-3*G*[-3] - 2*al^2*G*[-1]"),
        (("--beta", "2", "eval", "C1J(G[3])"), "-3*G*[-3] - 32*G*[-1]"),
        (("eval", "bracket(V[0], V[2])"), "2*al^2*V[0] + 2*V[2]"),
        (("eval", "pair(V*[2], V[2])"), "1"),
        (("--connection", "1", "eval", "c2(V[2], V[-2])"), "4*al^2 - 6"),
    ],
)
def test_eval_pretty(invoke, args, expected):
    result = invoke("--format", "pretty", *args)
    assert result.exit_code == 0, result.output
    assert result.stdout.strip() == expected


def test_eval_json(invoke):
    result = invoke("--format", "json", "eval", "c2(V[2],V[-2])")
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["expr"] == "c2(V[2], V[-2])"
    assert payload["value"] == "-6"
    assert payload["config"]["points"] == 3


def test_eval_csv(invoke):
    result = invoke("--format", "csv", "eval", "1/2")
    assert result.stdout.splitlines() == ["expr,value", "1 / 2,1/2"]


def test_table_csv(invoke):
    result = invoke("--points", "2", "--window", "2", "--format", "csv", "table", "c2")
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "left,right,value"
    assert "e[2],e[-2],-6" in lines
    assert "b[3/2],b[-3/2],4" in lines


def test_table_json(invoke):
    result = invoke("--window", "1", "--format", "json", "table", "C1J")
    assert result.exit_code == 0
    records = json.loads(result.stdout)
    assert {"arg": "G[1]", "coeffs": {"G*[-1]": "-1"}} in records


def test_verify_pass(invoke):
    result = invoke("--points", "2", "--format", "pretty", "verify", "osp12")
    assert result.exit_code == 0
    assert result.stdout.splitlines()[0] == "suite osp12: PASS"


def test_verify_failure_exits_with_one(invoke, monkeypatch):
    monkeypatch.setitem(suites.SUITES, "osp12", lambda run: [Check(id="x", status="fail", detail="no")])
    result = invoke("--format", "csv", "verify", "osp12")
    assert result.exit_code == 1
    assert "osp12,x,fail,no" in result.stdout
    assert "1 check(s) failed" in result.stderr


def test_parse_error_exits_with_two(invoke):
    result = invoke("eval", "V[1/2]")
    assert result.exit_code == 2
    assert "at byte 2" in result.stderr


@pytest.mark.parametrize(
    "args",
    [
        ("--beta", "0", "eval", "1"),
        ("--beta", "x", "eval", "1"),
        ("--connection", "V[0]", "eval", "1"),
        ("--points", "2", "eval", "iota(eps[0])"),
        ("eval", "V[0]*V[1]"),
        ("eval", "1/0"),
        ("--beta", "1", "--points", "3", "eval", "1/(rt - 1)"),
    ],
)
def test_domain_and_config_errors_exit_with_three(invoke, args):
    result = invoke(*args)
    assert result.exit_code == 3, result.output
    assert result.stderr.startswith("error: ")


def test_metrics_file(invoke, tmp_path):
    target = tmp_path / "metrics.prom"
    result = invoke("--metrics-file", str(target), "--format", "pretty", "eval", "1")
    assert result.exit_code == 0
    assert "knsuper_command_latency_seconds" in target.read_text()


def test_version(invoke):
    result = invoke("--version")
    assert result.exit_code == 0
    assert __version__ in result.stdout
