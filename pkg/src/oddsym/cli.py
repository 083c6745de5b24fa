"""Command-line entry point.

Exit codes: 0 success, 1 a property failed (counterexamples are printed),
2 usage error, 3 validation error in the scenario or the expressions.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys

from . import scenario as sc_mod
from . import suites
from .errors import OddSymError, ParseError, UnknownSymbol, ValidationError

VERBS = ("bracket", "jacobi", "dcan", "trunc-div", "semidensity", "dual-semidensity", "cross-check", "berezinian",
         "euclid-H", "suite", "run")
_TASK_FLAGS = ("f", "g", "h", "phi", "point", "chart", "t", "points", "charts", "outward_from")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oddsym", description="Odd symplectic supergeometry computations and suites.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("name", nargs="?", help="suite name (for the 'suite' verb)")
    p.add_argument("--scenario", help="scenario document (YAML)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int)
    p.add_argument("--n", type=int, help="dimension n of E^{n.n}")
    p.add_argument("--generators", type=int, help="number of Grassmann generators")
    p.add_argument("--degree", type=int)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--suite", help="suite name (alternative to the positional name)")
    p.add_argument("--timing", action="store_true", help="include timings in structured output")
    for flag in ("f", "g", "h", "phi", "chart"):
        p.add_argument(f"--{flag}")
    p.add_argument("--point", type=int)
    p.add_argument("--points", type=int, nargs="+")
    p.add_argument("--charts", nargs="+")
    p.add_argument("--t", type=float, nargs="+", help="parameter point for euclid-H")
    p.add_argument("--outward-from", dest="outward_from", type=float, nargs="+")
    return p


def _suite_params(fn, args):
    sig = inspect.signature(fn).parameters
    out = {"seed": args.seed}
    if args.count is not None and "count" in sig:
        out["count"] = args.count
    if args.generators is not None and "m" in sig:
        out["m"] = args.generators
    if args.degree is not None and "degree" in sig:
        out["degree"] = args.degree
    if args.n is not None:
        if "n" in sig:
            out["n"] = args.n
        elif "dims" in sig:
            out["dims"] = (args.n,)
    return out


def _default_scenario(args) -> sc_mod.Scenario:
    n = args.n or 1
    text = f"schema: 1\ncontext: {{n: {n}, generators: {args.generators or 6}, degree: {args.degree or 4}}}\n"
    return sc_mod.load_scenario(text)


def _task_from_flags(verb, args):
    task_args = {k: getattr(args, k) for k in _TASK_FLAGS if getattr(args, k) is not None}
    return sc_mod.Task(verb, task_args, f"cli.{verb}")


def _emit(payload_dict, text, fmt, out):
    if fmt == "structured":
        out.write(json.dumps(payload_dict, indent=2, sort_keys=False) + "\n")
    else:
        out.write(text + "\n")


def _dump_failures(report, out):
    for r in report.results:
        if r.passed:
            continue
        if r.task == "suite":
            for case in r.values.get("cases", []):
                if not case["passed"]:
                    out.write(f"counterexample {r.values['suite']}#{case['index']}: {json.dumps(case['values'])}\n")
            if not r.values.get("summary", {}).get("passed", True):
                out.write(f"suite {r.values['suite']} summary: {json.dumps(r.values['summary'])}\n")
        else:
            out.write(f"failed {r.task} {json.dumps(r.args)}: {json.dumps(r.values)}\n")


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        scenario = sc_mod.load_file(args.scenario) if args.scenario else _default_scenario(args)
    except OSError as exc:
        err.write(f"cannot read scenario: {exc}\n")
        return 2
    except ValidationError as exc:
        err.write("validation failed:\n" + "\n".join(f"  {p}: {m}" for p, m in exc.problems) + "\n")
        return 3
    if args.verb == "suite":
        name = args.name or args.suite
        if name not in suites.SUITES:
            err.write(f"unknown suite {name!r}; known: {', '.join(sorted(suites.SUITES))}\n")
            return 2
        task = sc_mod.Task("suite", {"name": name, **_suite_params(suites.SUITES[name], args)}, "cli.suite")
        task.args.pop("seed")
        scenario.tasks = [task]
    elif args.verb != "run":
        flagged = _task_from_flags(args.verb, args)
        matching = [t for t in scenario.tasks if t.name == args.verb]
        scenario.tasks = [flagged] if flagged.args or not matching else matching
    try:
        report = sc_mod.run(scenario, args.seed)
    except (ParseError, UnknownSymbol) as exc:
        err.write(f"validation failed: {exc}\n")
        return 3
    for r in report.results:
        msg = r.values.get("error", "")
        if msg.startswith(("ParseError", "UnknownSymbol", "ValidationError", "ParityViolation")):
            err.write(f"validation failed: {msg}\n")
            return 3
    text = _result_text(report) if args.verb not in ("run", "suite") else report.to_text()
    _emit(report.to_dict(include_timing=args.timing), text, args.format, out)
    if not report.passed:
        _dump_failures(report, err)
        return 1
    return 0


def _result_text(report) -> str:
    """Single computations print just their value."""
    if len(report.results) == 1 and "value" in report.results[0].values and report.passed:
        return str(report.results[0].values["value"])
    return report.to_text()


def entry():
    try:
        sys.exit(main())
    except OddSymError as exc:
        sys.stderr.write(f"error: {exc}\n")
        sys.exit(1)


if __name__ == "__main__":
    entry()
