"""One test per acceptance criterion; each prints a PASS/FAIL line."""

import random
import time
from pathlib import Path

from oddsym import suites
from oddsym.generators import random_polynomial, random_supernumber, reparam_chart
from oddsym.grassmann import SuperNumber, Surd
from oddsym.scenario import load_file, run
from oddsym.suites import one_one_covariance
from oddsym.superpoly import CoordinateSystem, SuperPolynomial
from oddsym.surfaces import Supersurface, SurfacePoint
from oddsym.symplectic import OddSymplecticStructure, VolumeForm

M = 6
DATA = Path(__file__).parent / "data"


def failures(result):
    return [c.index for c in result.failures()]


def test_jacobi_suite(criterion):
    start = time.perf_counter()
    res = suites.suite_jacobi(seed=7, count=100, n=2, m=M, degree=2, height=5)
    elapsed = time.perf_counter() - start
    ok = res.passed and len(res.cases) == 100 and elapsed < 60
    assert criterion(1, "Jacobi residual 0 on 100 triples in E^{2.2}", ok, f"{elapsed:.1f}s")


def test_bracket_table(criterion):
    results = [suites.suite_bracket_table(seed=seed, n=n) for seed in range(2) for n in (1, 2, 3)]
    report = run(load_file(DATA / "flat.yaml"), 0)
    ok = all(r.passed for r in results) and report.passed
    assert criterion(2, "Darboux charts reproduce the canonical bracket table", ok,
                     f"{sum(len(r.cases) for r in results)} charts")


def test_gamma_cocycle(criterion):
    res = suites.suite_gamma_cocycle(seed=0, count=25, degree=4)
    ok = res.passed and len(res.cases) == 25
    assert criterion(3, "Gamma cocycle vanishes on 25 chart triples", ok, f"failures {failures(res)}")


def test_dcan_invariance_and_covariance(criterion):
    res = suites.suite_dcan_invariance(seed=0, count=20, dims=(1, 2))
    x1 = CoordinateSystem.ambient(1)
    cov = []
    for seed in range(5):
        rng = random.Random(seed)
        psi = SuperPolynomial.constant(2 + seed, x1, M) + random_polynomial(rng, x1, M, 0, 2, height=3)
        curve = SuperPolynomial.parse(f"{seed + 1}*x1 + x1^2", x1, M)
        beta = random_polynomial(rng, x1, M, 1, 2, height=3, exclude=("th1",))
        point = {"x1": random_supernumber(rng, M, 0, body=seed + 1), "th1": random_supernumber(rng, M, 1)}
        cov.append(one_one_covariance(psi, curve, beta, point, M))
    ok = res.passed and len(res.cases) == 20 and all(o for o, _ in cov)
    assert criterion(4, "d_can chart independence and covariance in E^{1.1}", ok,
                     f"failures {failures(res)}, covariance {sum(o for o, _ in cov)}/5")


def test_volume_non_invariance(criterion):
    x1 = CoordinateSystem.ambient(1)
    chart = reparam_chart(SuperPolynomial.parse("2*x1", x1, M), SuperPolynomial.zero(x1, M), x1)
    point = {"x1": SuperNumber.parse("1", M), "th1": SuperNumber.parse("g1", M)}
    ber = chart.local_map(point).jacobian().berezinian()
    report = run(load_file(DATA / "flat.yaml"), 0)
    scen = next(r.values for r in report.results if r.task == "berezinian")
    ok = ber == SuperNumber.scalar(4, M) and scen == {"value": "4", "volume_preserving": False}
    assert criterion(5, "x' = 2x gives Ber = 4", ok, f"Ber = {ber}")


def test_truncated_divergence(criterion):
    res = suites.suite_trunc_div(seed=0, count=10, dims=(2, 3), reparams=3)
    ok = res.passed and len(res.cases) == 10
    assert criterion(6, "truncated divergence: closed form = prolongation, weight 0", ok,
                     f"failures {failures(res)}")


def _flat_to_second_order(rng, n, rho_at_one):
    s = OddSymplecticStructure.canonical_structure(n, M)
    c = s.coords
    params = CoordinateSystem.parameters(n - 1)

    def cubic(parity):
        p = random_polynomial(rng, params, M, parity, 3, height=3, density=0.6)
        return SuperPolynomial({k: v for k, v in p.terms.items() if sum(k[0]) + bin(k[1] >> M).count("1") >= 3},
                               params, M)

    surface = Supersurface.graph(c, cubic(0), cubic(1), M)
    z0 = {v: SuperNumber.scalar(0, M) for v in params.names}
    point = SurfacePoint(surface, s, VolumeForm.trivial(c, M), z0).point
    rho = random_polynomial(rng, c, M, 0, 2, height=2, density=0.5)
    rho = rho + SuperPolynomial.constant(2 - rho.evaluate(point).body(), c, M)
    if rho_at_one:
        rho = rho * SuperPolynomial.constant(rho.evaluate(point).inverse(), c, M)
    return SurfacePoint(surface, s, VolumeForm(rho), z0)


def test_semidensity_suite(criterion):
    parts = {}
    # (a) flat, rho = 1
    values = []
    for n in (2, 3):
        s = OddSymplecticStructure.canonical_structure(n, M)
        params = CoordinateSystem.parameters(n - 1)
        zero = SuperPolynomial.zero(params, M)
        q = {v: SuperNumber.parse("1" if v.startswith("xi") else "g2", M) for v in params.names}
        sp = SurfacePoint(Supersurface.graph(s.coords, zero, zero, M), s, VolumeForm.trivial(s.coords, M), q)
        values.append(sp.semidensity())
    parts["a"] = all(v.is_zero() for v in values)
    # (b) flat to second order: A = d log rho / d th^n at z0
    b_ok, nonzero = [], 0
    for seed in range(12):
        n = 2 + seed % 2
        sp = _flat_to_second_order(random.Random(seed), n, rho_at_one=True)
        a = sp.semidensity()
        values.append(a)
        nonzero += not a.is_zero()
        b_ok.append(a == Surd(sp.dv.log_gradient_at(sp.point)[2 * n - 1]))
    parts["b"] = all(b_ok) and nonzero >= 4
    # (d) weight one half under reparametrization
    weight = suites.suite_semidensity_weight(seed=0, count=10)
    parts["d"] = weight.passed and len(weight.cases) == 10
    # (e) gauge covariance of the dual density
    gauge = suites.suite_dual_gauge(seed=0, count=10)
    parts["e"] = gauge.passed and len(gauge.cases) == 10
    # (c) A^2 = 0 everywhere
    parts["c"] = all((v * v).is_zero() for v in values) and all(c.values["squares_vanish"] for c in weight.cases)
    ok = all(parts.values())
    assert criterion(7, "semidensity: flat, flat to second order, A^2 = 0, weight 1/2, gauge", ok,
                     " ".join(f"{k}={'ok' if v else 'FAIL'}" for k, v in sorted(parts.items()))
                     + f", {nonzero}/12 nonzero")


def test_dual_geometric_constant(criterion):
    res = suites.suite_dual_vs_geometric(seed=0, count=12)
    ok = res.passed and len(res.cases) >= 10 and res.summary.get("constant") is not None
    assert criterion(8, "A = c * dual with one constant c", ok, f"c = {res.summary.get('constant')}")


def test_euclid_oracle(criterion):
    res = suites.suite_euclid(seed=0, count=4, tol=1e-9)
    ok = res.passed
    assert criterion(9, "Euclidean mean curvature oracle within 1e-9", ok, f"failures {failures(res)}")


def test_round_trip_and_determinism(criterion):
    rng = random.Random(10)
    coords = CoordinateSystem.ambient(2)
    trips = 0
    for _ in range(200):
        f = random_polynomial(rng, coords, M, rng.randint(0, 1), 3, height=5, density=0.5)
        x = random_supernumber(rng, M, rng.randint(0, 1), height=5, terms=4)
        back = SuperPolynomial.parse(str(f), coords, M)
        trips += back == f and str(back) == str(f) and SuperNumber.parse(str(x), M) == x
    reports = [run(load_file(DATA / "flat.yaml"), 11).to_dict() for _ in range(2)]
    suite_runs = [suites.run_suite("semidensity-weight", seed=4, count=3).to_dict() for _ in range(2)]
    ok = trips == 200 and reports[0] == reports[1] and suite_runs[0] == suite_runs[1]
    assert criterion(10, "print/parse round trip and deterministic reports", ok, f"{trips}/200 round trips")
