"""
Text rendering of evaluation results and suite reports.

Densities are shown as basis expansions. The expansion window starts at the
configured one and is doubled until nothing is left over; an irreducible
remainder is appended as an explicit density term in brackets.
"""
import csv
import io
import json
from typing import Callable, List

from knsuper.cli.evaluator import Value
from knsuper.cli.models import EvalResult, RunConfig, SuiteReport
from knsuper.core.coeffield import Scalar, join_terms, render_scalar, render_term, scalar_eval
from knsuper.core.densities import (
    Density,
    Expansion,
    dual_family,
    expand_in_basis,
    expand_in_dual_basis,
    primal_family,
    render_density,
)
from knsuper.core.errors import WeightMismatch
from knsuper.core.merofun import PunctureConfig

MAX_WINDOW = 64


def specialiser(run: RunConfig) -> Callable[[Scalar], Scalar]:
    """Identity, or evaluation at the --beta value."""
    if run.beta is None:
        return lambda x: x
    beta = run.beta
    return lambda x: Scalar.from_q2(scalar_eval(x, beta))


def scalar_renderer(run: RunConfig) -> Callable[[Scalar], str]:
    special = specialiser(run)
    return lambda x: render_scalar(special(x))


def _expander(d: Density, cfg: PunctureConfig, flavor: str):
    try:
        primal_family(d.weight, cfg, flavor)
        return expand_in_basis
    except WeightMismatch:
        pass
    try:
        dual_family(d.weight, cfg, flavor)
        return expand_in_dual_basis
    except WeightMismatch:
        return None


def expand_adaptive(d: Density, window: int, cfg: PunctureConfig, flavor: str) -> Expansion:
    expand = _expander(d, cfg, flavor)
    if expand is None:
        raise WeightMismatch(f"no basis of weight {d.weight}")
    w = max(window, 1)
    expansion = expand(d, w, cfg, flavor)
    while not expansion.exact and w < MAX_WINDOW:
        w *= 2
        expansion = expand(d, w, cfg, flavor)
    return expansion


def render_value(value: Value, run: RunConfig) -> str:
    special = specialiser(run)
    if isinstance(value, Scalar):
        return render_scalar(special(value))
    terms: List[str] = []
    cfg = run.puncture
    for twice in value.weights():
        d = value.parts[twice]
        if _expander(d, cfg, value.flavor) is None:
            terms.append(f"[{render_density(d)}]")
            continue
        expansion = expand_adaptive(d, run.window, cfg, value.flavor)
        for label, c in expansion.coeffs:
            c = special(c)
            if not c.is_zero():
                terms.append(render_term(c, str(label)))
        if not expansion.exact:
            terms.append(f"[{render_density(expansion.residual)}]")
    return join_terms(terms)


def render_eval(result: EvalResult, fmt: str) -> str:
    if fmt == "json":
        return result.model_dump_json(indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["expr", "value"])
        writer.writerow([result.expr, result.value])
        return buf.getvalue().rstrip("\n")
    return result.value


def render_report(report: SuiteReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.model_dump(), indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["suite", "id", "status", "detail"])
        for check in report.checks:
            writer.writerow([report.suite, check.id, check.status, check.detail])
        return buf.getvalue().rstrip("\n")
    width = max((len(c.id) for c in report.checks), default=0)
    lines = [f"suite {report.suite}: {'PASS' if report.passed else 'FAIL'}"]
    for check in report.checks:
        lines.append(f"  [{check.status:4}] {check.id:<{width}}  {check.detail}")
    return "\n".join(lines)