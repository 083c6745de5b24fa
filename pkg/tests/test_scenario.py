from pathlib import Path

import pytest

from oddsym.scenario import ValidationError, load_file, load_scenario, run

DATA = Path(__file__).parent / "data"


def values(report):
    return {r.task: r.values for r in report.results}


def test_minimal_scenario():
    report = run(load_file(DATA / "minimal.yaml"), 0)
    assert report.passed
    assert [r.values["value"] for r in report.results] == ["1", "th1"]
    assert "value: 1" in report.to_text()


def test_flat_scenario_values():
    report = run(load_file(DATA / "flat.yaml"), 1)
    assert report.passed
    v = values(report)
    assert v["semidensity"]["value"] == "-g1"
    assert v["trunc-div"]["value"] == v["trunc-div"]["prolongation"] == "-g1"
    assert v["dual-semidensity"]["value"] == "-g1"
    assert v["cross-check"]["constant"] == "1"
    assert v["berezinian"] == {"value": "4", "volume_preserving": False}
    assert len(set(v["dcan"]["values"].values())) == 1


def test_reports_are_deterministic():
    sc = load_file(DATA / "flat.yaml")
    assert run(sc, 5).to_dict() == run(load_file(DATA / "flat.yaml"), 5).to_dict()


def test_validation_errors_are_aggregated():
    with pytest.raises(ValidationError) as info:
        load_file(DATA / "bad.yaml")
    paths = [p for p, _ in info.value.problems]
    assert paths == ["charts[0]", "charts[1].to", "tasks[0]"]
    assert "('x1', 'th1')" in info.value.problems[0][1]


@pytest.mark.parametrize("text", [
    "schema: 2\ncontext: {n: 1}\n",
    "schema: 1\ncontext: {n: 0}\n",
    "schema: 1\ncontext: {n: 1}\ntasks: [bracket th1*th1 x1]\n",
    "schema: 1\ncontext: {n: 1}\nvolume: {rho: 'th1'}\n",
    "[1, 2",
])
def test_invalid_documents(text):
    with pytest.raises(ValidationError):
        load_scenario(text)


def test_task_error_is_reported_not_raised():
    sc = load_scenario("schema: 1\ncontext: {n: 2, generators: 6}\nsurface: {level_set: {f: 'x2', phi: 'th2'}}\n"
                       "points: [{x1: '1'}]\ntasks: [{task: semidensity, point: 3}]\n")
    report = run(sc, 0)
    assert not report.passed and "error" in report.results[0].values
