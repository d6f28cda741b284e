"""Scenario runner: rule tables, comparisons, and sequential fusion.

A scenario is one JSON document::

    {"frame": ["A", "B"],
     "model": {"kind": "shafer", "empty": [], "world": "closed", "theta0": false},
     "sources": [{"A": 0.6, "B": 0.3, "A|B": 0.1}, ...],
     "stream": [{"A": 0.1, "B": 0.9}, ...],
     "dynamic_empty": ["B"],
     "rules": ["pcr5", "minc"],
     "options": {"minc_version": "a", "wao_mode": "static",
                 "pcr5": "exact", "order": [1, 2, 3]}}

``stream`` feeds sequential fusion; ``dynamic_empty`` adds constraints that
arrived after the sources committed their masses (the sources stay valid
against the base model, the fusion runs under the constrained one).

Exit codes: 0 success, 2 input error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field

from .bba import Bba, MassMatrix, conflict_ledger, validate_bba
from .diagnostics import Diagnostics
from .errors import BeliefFusionError, ScenarioError, TotalConflictError
from .lattice import CLOSED, FREE, HYBRID, Model, SHAFER, Frame
from .registry import RULE_ORDER, RuleOptions, run_rule

COINCIDE_TOL = 1e-9


@dataclass
class Scenario:
    frame: Frame
    model: Model
    fusion_model: Model
    sources: list
    stream: list
    rules: list
    options: RuleOptions
    path: str = "<scenario>"


@dataclass
class RuleRun:
    name: str
    bba: Bba | None = None
    error: str | None = None
    diag: Diagnostics = field(default_factory=Diagnostics)
    seconds: float = 0.0


@dataclass
class Report:
    scenario: Scenario
    runs: list
    k: float | None = None
    steps: list | None = None  # sequential mode: per-step rule runs
    comparisons: dict | None = None
    coincident: list | None = None

    def failed(self):
        return [r for r in self.runs if r.error]


def load_scenario(path, overrides=None):
    """Read and validate a scenario file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return scenario_from_dict(doc, path=path, overrides=overrides)


def scenario_from_dict(doc, path="<scenario>", overrides=None):
    overrides = overrides or {}
    try:
        frame = Frame(doc["frame"])
        mspec = doc.get("model", {})
        kind = mspec.get("kind", "shafer")
        if kind not in (FREE, SHAFER, HYBRID):
            raise ScenarioError(f"{path}: unknown model kind {kind!r}")
        model = Model(
            frame,
            kind,
            mspec.get("empty", ()),
            world=mspec.get("world", CLOSED),
            theta0=bool(mspec.get("theta0", False)),
        )
        dynamic = doc.get("dynamic_empty", ())
        if dynamic:
            base = [str(c) for c in model.constraints]
            if model.kind == SHAFER:
                frame_pairs = [
                    f"{a}&{b}"
                    for i, a in enumerate(frame.labels)
                    for b in frame.labels[i + 1:]
                ]
                base = frame_pairs
            fusion_model = Model(
                frame, HYBRID, tuple(base) + tuple(dynamic),
                world=model.world, theta0=model.theta0_enabled,
            )
        else:
            fusion_model = model
        raw_sources = doc.get("sources", [])
        if not raw_sources:
            raise ScenarioError(f"{path}: no sources")
        sources = []
        for i, table in enumerate(raw_sources):
            try:
                sources.append(validate_bba(Bba(model, table)))
            except BeliefFusionError as exc:
                raise ScenarioError(f"{path}: source {i + 1}: {exc}") from exc
        stream = []
        for i, table in enumerate(doc.get("stream", [])):
            try:
                stream.append(validate_bba(Bba(model, table)))
            except BeliefFusionError as exc:
                raise ScenarioError(f"{path}: stream entry {i + 1}: {exc}") from exc
        rules = overrides.get("rules") or doc.get("rules") or list(RULE_ORDER)
        for r in rules:
            if r not in RULE_ORDER:
                raise ScenarioError(f"{path}: unknown rule {r!r}")
        ospec = dict(doc.get("options", {}))
        ospec.update({k: v for k, v in overrides.items() if k != "rules" and v is not None})
        order = ospec.get("order")
        options = RuleOptions(
            minc_version=ospec.get("minc_version", "a"),
            wao_mode=ospec.get("wao_mode", "static"),
            pcr5_variant=ospec.get("pcr5", "exact"),
            order=tuple(order) if order else None,
        )
        if options.minc_version not in ("a", "b"):
            raise ScenarioError(f"{path}: minc_version must be 'a' or 'b'")
        if options.wao_mode not in ("static", "dynamic"):
            raise ScenarioError(f"{path}: wao_mode must be 'static' or 'dynamic'")
        if options.pcr5_variant not in ("exact", "approx"):
            raise ScenarioError(f"{path}: pcr5 must be 'exact' or 'approx'")
        return Scenario(frame, model, fusion_model, sources, stream, list(rules), options, path)
    except KeyError as exc:
        raise ScenarioError(f"{path}: missing field {exc}") from None


def _execute(name, matrix, scenario):
    run = RuleRun(name)
    start = time.perf_counter()
    try:
        run.bba = run_rule(name, matrix, scenario.fusion_model, scenario.options, run.diag)
    except TotalConflictError as exc:
        run.error = str(exc)
    run.seconds = time.perf_counter() - start
    return run


def run_scenario(scenario) -> Report:
    """Run the selected rules once over all sources."""
    matrix = MassMatrix(scenario.sources)
    runs = [_execute(name, matrix, scenario) for name in scenario.rules]
    k = None
    if matrix.s >= 2:
        k = float(conflict_ledger(matrix, scenario.fusion_model).k)
    return Report(scenario, runs, k=k)


def sequential_fusion(scenario) -> Report:
    """Fold the stream into the sources one observation at a time.

    Only the fused result is kept as the prior for the next step; the
    report carries the assignment after every step.
    """
    if not scenario.stream:
        raise ScenarioError(f"{scenario.path}: sequential mode needs a 'stream'")
    steps = []
    priors = {}
    final = []
    for name in scenario.rules:
        prior = scenario.sources[0]
        if len(scenario.sources) > 1:
            first = _execute(name, MassMatrix(scenario.sources), scenario)
            if first.error:
                priors[name] = first
                continue
            prior = first.bba
        priors[name] = prior
    for i, obs in enumerate(scenario.stream):
        step_runs = []
        for name in scenario.rules:
            prior = priors[name]
            if isinstance(prior, RuleRun):  # already failed
                step_runs.append(prior)
                continue
            run = _execute(name, MassMatrix([prior, obs]), scenario)
            if not run.error:
                priors[name] = run.bba
            else:
                priors[name] = run
            step_runs.append(run)
        steps.append(step_runs)
    final = steps[-1] if steps else []
    return Report(scenario, final, steps=steps)


def compare_rules(scenario) -> Report:
    """Run every rule and flag the pairs that coincide."""
    scenario.rules = list(RULE_ORDER)
    report = run_scenario(scenario)
    ok = [r for r in report.runs if not r.error]
    diffs = {}
    coincident = []
    for i, a in enumerate(ok):
        for b in ok[i + 1:]:
            elems = set(a.bba) | set(b.bba)
            d = max((abs(a.bba[e] - b.bba[e]) for e in elems), default=0.0)
            diffs[(a.name, b.name)] = d
            if d <= COINCIDE_TOL:
                coincident.append((a.name, b.name))
    report.comparisons = diffs
    report.coincident = coincident
    return report


# --- rendering --------------------------------------------------------------


def _element_columns(runs):
    elems = set()
    for run in runs:
        if run.bba is not None:
            elems.update(run.bba.keys())
    return sorted(elems)


def _format_table(runs, precision, timing):
    elems = _element_columns(runs)
    if not elems:
        lines = [f"! {run.name}: {run.error}" for run in runs if run.error]
        return lines or ["(no results)"]
    width = max(10, precision + 4)
    name_w = max([len(str(e)) for e in elems] + [7])
    lines = [" ".join([" " * name_w] + [f"{run.name:>{width}}" for run in runs])]
    for e in elems:
        cells = []
        for run in runs:
            if run.error:
                cells.append(f"{'—':>{width}}")
            else:
                cells.append(f"{run.bba[e]:>{width}.{precision}f}")
        lines.append(" ".join([f"{str(e):<{name_w}}"] + cells))
    total_row = []
    for run in runs:
        total_row.append(f"{'—':>{width}}" if run.error else f"{run.bba.total():>{width}.{precision}f}")
    lines.append(" ".join([f"{'(sum)':<{name_w}}"] + total_row))
    for run in runs:
        if run.error:
            lines.append(f"! {run.name}: {run.error}")
        if run.diag.sum_deficit:
            lines.append(f"! {run.name}: sum below one by {run.diag.sum_deficit:.{precision}f}")
        for note in run.diag.notes:
            lines.append(f"# {run.name}: {note}")
    if timing:
        lines.append("timing: " + " ".join(f"{r.name}={r.seconds * 1e3:.2f}ms" for r in runs))
    return lines


def render_report(report, fmt="table", precision=6, timing=False):
    scenario = report.scenario
    if fmt == "machine":
        return _render_machine(report, precision, timing)
    lines = [f"scenario: {scenario.path}",
             f"frame: {', '.join(scenario.frame.labels)}  model: {scenario.fusion_model.kind}"
             + (f"  constraints: {', '.join(str(c) for c in scenario.fusion_model.constraints)}"
                if scenario.fusion_model.constraints else "")]
    if report.k is not None:
        lines.append(f"total conflict k = {report.k:.{precision}f}")
    if report.steps is not None:
        for i, step_runs in enumerate(report.steps, start=1):
            lines.append(f"-- step {i} --")
            lines.extend(_format_table(step_runs, precision, timing))
    else:
        lines.extend(_format_table(report.runs, precision, timing))
    if report.comparisons is not None:
        lines.append("-- pairwise max |difference| --")
        for (a, b), d in sorted(report.comparisons.items()):
            lines.append(f"{a} vs {b}: {d:.{precision}f}")
        if report.coincident:
            for a, b in report.coincident:
                lines.append(f"= {a} coincides with {b}")
    return "\n".join(lines)


def _render_machine(report, precision, timing):
    def bba_dict(b):
        return {str(e): round(v, 12) for e, v in b.items()}

    doc = {"scenario": report.scenario.path, "k": report.k, "rules": {}}
    for run in report.runs:
        entry = {}
        if run.error:
            entry["error"] = run.error
        else:
            entry["masses"] = bba_dict(run.bba)
            entry["sum"] = round(run.bba.total(), 12)
        if run.diag.sum_deficit:
            entry["sum_deficit"] = run.diag.sum_deficit
        if run.diag.order:
            entry["order"] = list(run.diag.order)
        if run.diag.fallbacks:
            entry["fallbacks"] = [
                {"stage": f.stage, "destination": str(f.destination), "amount": float(f.amount)}
                for f in run.diag.fallbacks
            ]
        if timing:
            entry["seconds"] = run.seconds
        doc["rules"][run.name] = entry
    if report.steps is not None:
        doc["steps"] = [
            {run.name: (bba_dict(run.bba) if run.bba is not None else {"error": run.error})
             for run in step}
            for step in report.steps
        ]
    if report.comparisons is not None:
        doc["comparisons"] = {f"{a}|{b}": d for (a, b), d in sorted(report.comparisons.items())}
        doc["coincident"] = [list(p) for p in report.coincident]
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False)


def build_parser():
    p = argparse.ArgumentParser(
        prog="massfusion",
        description="Combine belief assignments from a scenario file under the "
                    "classic and conflict-redistribution rules.",
    )
    p.add_argument("scenario", help="path to a scenario JSON file")
    p.add_argument("--rule", action="append", dest="rules", metavar="NAME",
                   help=f"rule to run (repeatable); one of: {', '.join(RULE_ORDER)}")
    p.add_argument("--all", action="store_true", help="run every registered rule")
    p.add_argument("--compare", action="store_true",
                   help="run every rule and report pairwise differences")
    p.add_argument("--sequential", action="store_true",
                   help="fold the scenario's stream one observation at a time")
    p.add_argument("--minc-version", choices=("a", "b"), default=None)
    p.add_argument("--wao-mode", choices=("static", "dynamic"), default=None)
    p.add_argument("--pcr5", choices=("exact", "approx"), default=None)
    p.add_argument("--order", default=None, metavar="I,J,...",
                   help="source order for the approximate PCR5 variant")
    p.add_argument("--format", choices=("table", "machine"), default="table")
    p.add_argument("--precision", type=int, default=6, metavar="N")
    p.add_argument("--timing", action="store_true", help="include per-rule timings")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {
        "rules": list(RULE_ORDER) if (args.all or args.compare) else args.rules,
        "minc_version": args.minc_version,
        "wao_mode": args.wao_mode,
        "pcr5": args.pcr5,
        "order": [int(x) for x in args.order.split(",")] if args.order else None,
    }
    try:
        scenario = load_scenario(args.scenario, overrides)
    except BeliefFusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        if args.sequential:
            report = sequential_fusion(scenario)
        elif args.compare:
            report = compare_rules(scenario)
        else:
            report = run_scenario(scenario)
    except ScenarioError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BeliefFusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(render_report(report, args.format, args.precision, args.timing))
    return 3 if report.failed() else 0


if __name__ == "__main__":
    sys.exit(main())
