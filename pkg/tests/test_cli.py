import io
import json
from pathlib import Path

import pytest

from oddsym import suites
from oddsym.cli import main
from oddsym.suites import CaseResult, SuiteResult

DATA = Path(__file__).parent / "data"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def cfg(tmp_path):
    path = tmp_path / "s.cfg"
    path.write_text("schema: 1\ncontext: {n: 1, generators: 4}\n")
    return str(path)


def test_bracket_prints_value(cfg):
    code, out, _ = call("bracket", "--scenario", cfg, "--f", "x1*th1", "--g", "th1")
    assert code == 0 and out.strip() == "th1"


def test_jacobi_suite_exit_zero():
    code, out, _ = call("suite", "jacobi", "--n", "2", "--seed", "7", "--count", "100")
    assert code == 0 and "jacobi" in out


def test_semidensity_weight_suite_shows_ratio():
    code, out, _ = call("suite", "semidensity-weight", "--seed", "3")
    assert code == 0 and "ratio" in out and "sqrt_Ber" in out


def test_structured_output(cfg):
    code, out, _ = call("bracket", "--scenario", cfg, "--f", "x1", "--g", "th1", "--format", "structured")
    doc = json.loads(out)
    assert code == 0 and doc["results"][0]["values"]["value"] == "1"
    assert "timing" not in doc


def test_run_verb():
    code, out, _ = call("run", "--scenario", str(DATA / "flat.yaml"))
    assert code == 0 and "all passed" in out


@pytest.mark.parametrize("argv", [("frobnicate",), ("suite", "nope"), ("bracket", "--seed", "x")])
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_validation_errors(cfg):
    assert call("bracket", "--scenario", cfg, "--f", "th1*th1", "--g", "x1")[0] == 3
    code, _, err = call("run", "--scenario", str(DATA / "bad.yaml"))
    assert code == 3 and "unknown task" in err


def test_bad_point_index(tmp_path):
    path = tmp_path / "bad_point.yaml"
    path.write_text("schema: 1\ncontext: {n: 2, generators: 6}\nsurface: {level_set: {f: 'x2', phi: 'th2'}}\n"
                    "points: [{x1: '1'}]\ntasks: [{task: semidensity, point: 3}]\n")
    assert call("run", "--scenario", str(path))[0] == 3


def test_property_failure_dumps_counterexample(monkeypatch):
    def broken(seed=0, count=2):
        cases = [CaseResult(i, i == 0, {"residual": str(i)}) for i in range(count)]
        return SuiteResult("jacobi", 1, {"seed": seed, "count": count}, cases, {})

    monkeypatch.setitem(suites.SUITES, "jacobi", broken)
    code, _, err = call("suite", "jacobi", "--count", "2")
    assert code == 1 and 'counterexample jacobi#1: {"residual": "1"}' in err
