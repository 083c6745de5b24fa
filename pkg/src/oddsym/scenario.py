"""Scenario documents (YAML) and their deterministic execution.

Schema (version 1)::

    schema: 1
    context: {n: 2, generators: 6, degree: 4}
    symplectic: canonical            # or {omega_upper: MATRIX} / {omega_lower: MATRIX}
    volume: {rho: "1 + g1*th1"}
    charts:
      - {name: w, to: [exprs], from: [exprs], darboux: true}
    surface: {parametric: [exprs in xi/nu]}  # or {level_set: {f: expr, phi: expr}}
    points:
      - {x1: "1", th1: "g1"}           # parameter names for parametric surfaces
    euclid_surface: {dim: 3, components: [exprs in t1..]}
    tasks:
      - "bracket x1 th1"                # shorthand: verb and positional arguments
      - {task: suite, name: jacobi, count: 10}

A MATRIX is either a nested list of expression strings or
``{entries: [[...]], row_parities: [...], col_parities: [...]}``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import yaml

from . import euclid, suites
from .charts import CoordinateChart, LocalMap, d_can, level_set_pair, transition
from .errors import OddSymError, ValidationError
from .grassmann import EVEN, ODD, SuperNumber
from .superlinalg import SuperMatrix
from .superpoly import CoordinateSystem, SuperPolynomial
from .surfaces import (LevelSetSurface, Supersurface, SurfacePoint, cross_check_constant, dual_pairing,
                       level_set_orientation, semidensity_dual, truncated_divergence_by_prolongation)
from .symplectic import OddSymplecticStructure, VolumeForm

SCHEMA_VERSION = 1
TASKS = ("bracket", "jacobi", "dcan", "trunc-div", "semidensity", "dual-semidensity", "cross-check", "berezinian",
         "euclid-H", "suite")
_POSITIONAL = {"bracket": ("f", "g"), "jacobi": ("f", "g", "h"), "suite": ("name",), "berezinian": ("chart", "point"),
               "semidensity": ("point",), "trunc-div": ("point",), "dual-semidensity": ("point",)}


@dataclass
class Task:
    name: str
    args: dict
    path: str


@dataclass
class Scenario:
    n: int
    m: int
    degree: int
    structure: OddSymplecticStructure
    volume: VolumeForm
    charts: dict
    surface: object = None
    level_set: LevelSetSurface = None
    points: list = field(default_factory=list)
    euclid_surface: euclid.Hypersurface = None
    tasks: list = field(default_factory=list)

    @property
    def coords(self) -> CoordinateSystem:
        return self.structure.coords

    def parse(self, text, coords=None) -> SuperPolynomial:
        return SuperPolynomial.parse(str(text), coords or self.coords, self.m)

    def darboux_chart(self):
        """The first Darboux-flagged chart, or ``None`` (identity) for the canonical structure."""
        if self.structure.canonical:
            return None
        for ch in self.charts.values():
            if ch.darboux:
                return ch
        raise ValidationError([("charts", "a Darboux chart is needed for a non-canonical structure")])


@dataclass
class TaskResult:
    task: str
    args: dict
    values: dict
    passed: bool

    def to_dict(self):
        return {"task": self.task, "args": self.args, "passed": self.passed, "values": self.values}


@dataclass
class Report:
    seed: int
    results: list
    timing: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self, include_timing=False):
        out = {"schema": SCHEMA_VERSION, "seed": self.seed, "passed": self.passed,
               "results": [r.to_dict() for r in self.results]}
        if include_timing:
            out["timing"] = dict(self.timing)
        return out

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            args = " ".join(f"{k}={v}" for k, v in r.args.items())
            lines.append(f"[{status}] {r.task} {args}".rstrip())
            if r.task == "suite" and "cases" in r.values:
                lines.extend(_suite_lines(r.values))
                continue
            for k, v in r.values.items():
                lines.append(f"    {k}: {_text(v)}")
        lines.append("all passed" if self.passed else "FAILURES")
        return "\n".join(lines)


def _suite_lines(res, width=100):
    lines = [f"    suite {res['suite']} v{res['version']}: {sum(c['passed'] for c in res['cases'])}/"
             f"{len(res['cases'])} cases passed"]
    if res.get("summary"):
        lines.append(f"    summary: {_text(res['summary'])}")
    for case in res["cases"]:
        body = " ".join(f"{k}={_text(v)}" for k, v in case["values"].items())
        if len(body) > width:
            body = body[: width - 3] + "..."
        lines.append(f"    #{case['index']} {'PASS' if case['passed'] else 'FAIL'} {body}")
    return lines


def _text(v):
    if isinstance(v, list):
        return "[" + ", ".join(_text(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_text(x)}" for k, x in v.items()) + "}"
    return str(v)


# loading
class _Collector:
    def __init__(self):
        self.problems = []

    def add(self, path, msg):
        self.problems.append((path, msg))

    def guard(self, path, fn, *args):
        try:
            return fn(*args)
        except (OddSymError, ValueError, TypeError, KeyError) as exc:
            self.add(path, str(exc) or type(exc).__name__)
            return None


def load_scenario(text: str) -> Scenario:
    """Parse and validate; all problems are reported together as a :class:`ValidationError`."""
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ValidationError([("<document>", f"not valid YAML: {exc}")]) from None
    if not isinstance(doc, dict):
        raise ValidationError([("<document>", "expected a mapping at the top level")])
    col = _Collector()
    if doc.get("schema") != SCHEMA_VERSION:
        col.add("schema", f"missing or unsupported schema version (expected {SCHEMA_VERSION})")
    known = {"schema", "context", "symplectic", "volume", "charts", "surface", "points", "euclid_surface", "tasks"}
    for key in sorted(set(doc) - known):
        col.add(key, "unknown key")
    ctx = doc.get("context") or {}
    n, m, degree = ctx.get("n", 1), ctx.get("generators", 6), ctx.get("degree", 4)
    for key, val in (("n", n), ("generators", m), ("degree", degree)):
        if not isinstance(val, int) or val < 1:
            col.add(f"context.{key}", "must be a positive integer")
    if col.problems:
        raise ValidationError(col.problems)
    coords = CoordinateSystem.ambient(n)

    def poly(path, text, system=coords):
        return col.guard(path, SuperPolynomial.parse, str(text), system, m)

    structure = _load_structure(doc.get("symplectic", "canonical"), coords, n, m, col, poly)
    rho = poly("volume.rho", (doc.get("volume") or {}).get("rho", "1"))
    volume = col.guard("volume.rho", VolumeForm, rho) if rho is not None else None
    charts = {}
    for i, spec in enumerate(doc.get("charts") or []):
        path = f"charts[{i}]"
        if not isinstance(spec, dict) or "name" not in spec or "to" not in spec:
            col.add(path, "a chart needs 'name' and 'to'")
            continue
        to = [poly(f"{path}.to[{k}]", e) for k, e in enumerate(spec["to"])]
        back = [poly(f"{path}.from[{k}]", e) for k, e in enumerate(spec.get("from") or [])] or None
        if len(to) != coords.dim or (back is not None and len(back) != coords.dim):
            col.add(path, f"expected {coords.dim} component expressions")
            continue
        if any(p is None for p in to) or (back and any(p is None for p in back)):
            continue
        bad = [f"{name} has the wrong parity" for name, p in zip(coords.names, to)
               if not p.is_zero() and p.parity() != (ODD if coords.parity(name) else EVEN)]
        if bad:
            col.add(f"{path}.to", "; ".join(bad))
            continue
        chart = CoordinateChart(str(spec["name"]), coords, to, back, darboux=bool(spec.get("darboux")), m=m)
        if back is not None and not col.guard(f"{path}.from", chart.check_inverse):
            col.add(f"{path}.from", "is not the inverse of 'to'")
        if chart.darboux and structure is not None:
            bad = col.guard(path, chart.darboux_failures, structure)
            if bad:
                col.add(path, f"flagged darboux but the bracket table fails at {bad}")
        charts[chart.name] = chart
    surface, level = None, None
    surf = doc.get("surface")
    if surf is not None:
        surface, level = _load_surface(surf, coords, n, m, col, poly)
    points = []
    for i, spec in enumerate(doc.get("points") or []):
        path = f"points[{i}]"
        if not isinstance(spec, dict):
            col.add(path, "a point is a mapping of coordinate names to expressions")
            continue
        system = surface.params if (surface is not None and level is None) else coords
        pt = {}
        for name in system.names:
            text = spec.get(name, "0")
            val = col.guard(f"{path}.{name}", lambda t: SuperNumber.parse(str(t), m), text)
            if val is None:
                continue
            if not val.is_zero() and val.parity() != (ODD if system.parity(name) else EVEN):
                col.add(f"{path}.{name}", "value has the wrong parity")
            pt[name] = val
        for name in sorted(set(spec) - set(system.names)):
            col.add(f"{path}.{name}", "unknown coordinate")
        if level is not None and len(pt) == system.dim:
            col.guard(path, level.check_on, pt)
        points.append(pt)
    hyper = None
    if doc.get("euclid_surface") is not None:
        es = doc["euclid_surface"]
        comps = es.get("components") if isinstance(es, dict) else None
        if not comps or es.get("dim", len(comps)) != len(comps):
            col.add("euclid_surface", "needs 'components' matching 'dim'")
        else:
            hyper = col.guard("euclid_surface.components", euclid.Hypersurface, [str(c) for c in comps])
    tasks = []
    for i, spec in enumerate(doc.get("tasks") or []):
        task = _load_task(spec, f"tasks[{i}]", col)
        if task is not None:
            for key in _EXPRESSION_ARGS & task.args.keys():
                poly(f"{task.path}.{key}", task.args[key])
            tasks.append(task)
    if col.problems:
        raise ValidationError(col.problems)
    return Scenario(n, m, degree, structure, volume, charts, surface, level, points, hyper, tasks)


def _load_matrix(spec, coords, path, col, poly):
    if isinstance(spec, dict):
        entries = spec.get("entries")
        rp = spec.get("row_parities", coords.parities())
        cp = spec.get("col_parities", [1 - p for p in coords.parities()])
    else:
        entries, rp, cp = spec, coords.parities(), [1 - p for p in coords.parities()]
    if not isinstance(entries, list) or len(entries) != coords.dim or any(
            not isinstance(r, list) or len(r) != coords.dim for r in entries):
        col.add(path, f"expected a {coords.dim}x{coords.dim} matrix of expressions")
        return None
    rows = [[poly(f"{path}[{i}][{j}]", e) for j, e in enumerate(r)] for i, r in enumerate(entries)]
    if any(e is None for r in rows for e in r):
        return None
    return col.guard(path, SuperMatrix, rows, rp, cp)


def _load_structure(spec, coords, n, m, col, poly):
    if spec == "canonical":
        return OddSymplecticStructure.canonical_structure(n, m)
    if not isinstance(spec, dict) or not ({"omega_upper", "omega_lower"} & set(spec)):
        col.add("symplectic", "expected 'canonical' or a mapping with omega_upper / omega_lower")
        return None
    if "omega_upper" in spec:
        up = _load_matrix(spec["omega_upper"], coords, "symplectic.omega_upper", col, poly)
        return col.guard("symplectic", lambda: OddSymplecticStructure(coords, up, m=m)) if up else None
    low = _load_matrix(spec["omega_lower"], coords, "symplectic.omega_lower", col, poly)
    if low is None:
        return None
    low = SuperMatrix(low.entries, coords.parities(), coords.parities())
    return col.guard("symplectic", lambda: OddSymplecticStructure(coords, omega_lower=low, m=m))


def _load_surface(spec, coords, n, m, col, poly):
    if isinstance(spec, dict) and "parametric" in spec:
        params = CoordinateSystem.parameters(n - 1)
        comps = [poly(f"surface.parametric[{i}]", e, params) for i, e in enumerate(spec["parametric"])]
        if len(comps) != coords.dim:
            col.add("surface.parametric", f"expected {coords.dim} components")
            return None, None
        if any(c is None for c in comps):
            return None, None
        return col.guard("surface.parametric", lambda: Supersurface(coords, params, comps, m=m)), None
    if isinstance(spec, dict) and isinstance(spec.get("level_set"), dict):
        ls = spec["level_set"]
        f, phi = poly("surface.level_set.f", ls.get("f", "")), poly("surface.level_set.phi", ls.get("phi", ""))
        if f is None or phi is None:
            return None, None
        level = col.guard("surface.level_set", LevelSetSurface, f, phi)
        return None, level
    col.add("surface", "expected 'parametric' or 'level_set'")
    return None, None


_EXPRESSION_ARGS = {"f", "g", "h", "phi"}


def _load_task(spec, path, col):
    if isinstance(spec, str):
        words = spec.split()
        if not words:
            col.add(path, "empty task")
            return None
        name, rest = words[0], words[1:]
        keys = _POSITIONAL.get(name, ())
        if len(rest) > len(keys):
            col.add(path, f"task {name!r} takes at most {len(keys)} positional arguments")
            return None
        args = {k: _scalar(v) for k, v in zip(keys, rest)}
    elif isinstance(spec, dict) and "task" in spec:
        name = spec["task"]
        args = {k: v for k, v in spec.items() if k != "task"}
    else:
        col.add(path, "a task is a string or a mapping with 'task'")
        return None
    if name not in TASKS:
        col.add(path, f"unknown task {name!r}")
        return None
    if name == "suite" and args.get("name") not in suites.SUITES:
        col.add(f"{path}.name", f"unknown suite {args.get('name')!r}")
        return None
    return Task(name, args, path)


def _scalar(v):
    try:
        return int(v)
    except ValueError:
        return v


# running
def run(scenario: Scenario, seed: int = 0) -> Report:
    results = []
    timing = {}
    for task in scenario.tasks:
        start = time.perf_counter()
        try:
            values, passed = _RUNNERS[task.name](scenario, task.args, seed)
        except OddSymError as exc:
            values, passed = {"error": f"{type(exc).__name__}: {exc}"}, False
        timing[task.path] = round(time.perf_counter() - start, 6)
        results.append(TaskResult(task.name, dict(task.args), values, passed))
    return Report(seed, results, timing)


def _point(sc: Scenario, args, key="point"):
    idx = int(args.get(key, 0))
    if not 0 <= idx < len(sc.points):
        raise ValidationError([(key, f"no point with index {idx}")])
    return sc.points[idx]


def _surface_point(sc: Scenario, args, key="point"):
    pt = _point(sc, args, key)
    chart = sc.darboux_chart()
    if sc.level_set is not None:
        lvl = sc.level_set
        return SurfacePoint(lvl.anchored(pt), sc.structure, sc.volume, lvl.parameter_point(pt), chart=chart), pt
    if sc.surface is None:
        raise ValidationError([("surface", "this task needs a surface")])
    return SurfacePoint(sc.surface, sc.structure, sc.volume, pt, chart=chart), None


def _orientation(sc, pt):
    return level_set_orientation(sc.level_set, sc.structure, pt) if sc.level_set is not None else None


def _run_bracket(sc, args, seed):
    value = sc.structure.bracket(sc.parse(args["f"]), sc.parse(args["g"]))
    return {"value": str(value)}, True


def _run_jacobi(sc, args, seed):
    r = sc.structure.jacobi_residual(sc.parse(args["f"]), sc.parse(args["g"]), sc.parse(args["h"]))
    return {"residual": str(r)}, r.is_zero()


def _run_berezinian(sc, args, seed):
    if "matrix" in args:
        col = _Collector()
        mat = _load_matrix(args["matrix"], sc.coords, "matrix", col, lambda p, t, s=sc.coords: col.guard(
            p, SuperPolynomial.parse, str(t), s, sc.m))
        if col.problems:
            raise ValidationError(col.problems)
        ber = mat.map(lambda e: e.constant_term()).berezinian()
        return {"value": str(ber)}, True
    chart = sc.charts.get(args.get("chart"))
    if chart is None:
        raise ValidationError([("chart", f"unknown chart {args.get('chart')!r}")])
    jac = chart.local_map(_point(sc, args)).jacobian()
    ber = jac.berezinian()
    return {"value": str(ber), "volume_preserving": ber == SuperNumber.scalar(1, sc.m)}, True


def _run_dcan(sc, args, seed):
    pt = _point(sc, args)
    pair, _ = level_set_pair(sc.parse(args["f"]), sc.parse(args["phi"]), sc.structure, pt)
    pair.validate(sc.structure.lower_at(pt), sc.structure)
    names = args.get("charts") or [n for n, c in sc.charts.items() if c.darboux]
    base = suites._identity_chart(sc.coords, sc.m)
    values = {}
    for name in names:
        chart = sc.charts.get(name)
        if chart is None:
            raise ValidationError([("charts", f"unknown chart {name!r}")])
        values[name] = str(d_can(pair, transition(base, chart, pt)))
    if sc.structure.canonical:
        values["identity"] = str(d_can(pair, LocalMap.identity(sc.coords, pt, sc.m)))
    return {"values": values}, len(set(values.values())) <= 1


def _run_trunc_div(sc, args, seed):
    sp, pt = _surface_point(sc, args)
    orient = _orientation(sc, pt)
    if orient is None:
        orient = sp.plane_basis()[1]
    value = sp.truncated_divergence(orient)
    out = {"value": str(value), "psi": [str(x) for x in orient]}
    passed = True
    if sc.level_set is not None:
        ref, _ = truncated_divergence_by_prolongation(sp, sc.level_set)
        out["prolongation"] = str(ref)
        passed = ref == value
    return out, passed


def _run_semidensity(sc, args, seed):
    sp, pt = _surface_point(sc, args)
    a = sp.semidensity(_orientation(sc, pt))
    return {"value": str(a), "square_is_zero": (a * a).is_zero()}, (a * a).is_zero()


def _run_dual(sc, args, seed):
    if sc.level_set is None:
        raise ValidationError([("surface", "dual-semidensity needs a level_set surface")])
    value = semidensity_dual(sc.level_set, sc.structure, sc.volume, _point(sc, args))
    return {"value": str(value)}, True


def _run_cross_check(sc, args, seed):
    if sc.level_set is None:
        raise ValidationError([("surface", "cross-check needs a level_set surface")])
    idx = args.get("points") or list(range(len(sc.points)))
    pairs, rows = [], []
    for i in idx:
        sp, pt = _surface_point(sc, {"point": i})
        a = sp.semidensity(_orientation(sc, pt))
        dual = semidensity_dual(sc.level_set, sc.structure, sc.volume, pt)
        k = dual_pairing(sp, sc.level_set)
        pairs.append((a, dual * k))
        rows.append({"point": i, "A": str(a), "dual": str(dual), "pairing": str(k)})
    c = cross_check_constant(pairs)
    return {"constant": str(c), "instances": rows}, True


def _run_euclid(sc, args, seed):
    if sc.euclid_surface is None:
        raise ValidationError([("euclid_surface", "euclid-H needs an euclid_surface")])
    t = [float(v) for v in args.get("t", [])]
    h = euclid.mean_curvature_density(sc.euclid_surface, t, args.get("outward_from"))
    ratio = euclid.mean_curvature_ratio(sc.euclid_surface, t, args.get("outward_from"))
    return {"H": repr(h), "H_over_sqrt_det_g": repr(ratio)}, True


def _run_suite(sc, args, seed):
    params = {k: v for k, v in args.items() if k != "name"}
    params.setdefault("seed", seed)
    res = suites.run_suite(args["name"], **params)
    return res.to_dict(), res.passed


_RUNNERS = {
    "bracket": _run_bracket,
    "jacobi": _run_jacobi,
    "berezinian": _run_berezinian,
    "dcan": _run_dcan,
    "trunc-div": _run_trunc_div,
    "semidensity": _run_semidensity,
    "dual-semidensity": _run_dual,
    "cross-check": _run_cross_check,
    "euclid-H": _run_euclid,
    "suite": _run_suite,
}


def load_file(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return load_scenario(fh.read())
