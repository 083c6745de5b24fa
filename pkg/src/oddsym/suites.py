"""Named, versioned property suites.  Each case draws from its own RNG seeded
by ``(suite, seed, case index)``, so results do not depend on evaluation order
and degenerate draws are resampled deterministically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import euclid
from .charts import CoordinateChart, LocalField, LocalMap, OddNormalPair, d_can, gamma, gamma_by_definition, level_set_pair, transition
from .errors import InconsistentConstant, NotDarboux, OddSymError
from .generators import (random_chart, random_darboux_chart, random_point, random_polynomial, random_supernumber,
                         reparam_chart)
from .grassmann import SuperNumber, Surd
from .superlinalg import SuperMatrix
from .superpoly import CoordinateSystem, SuperPolynomial
from .surfaces import (LevelSetSurface, Supersurface, SurfacePoint, cross_check_constant, dual_pairing,
                       level_set_orientation, semidensity_dual, truncated_divergence_by_prolongation)
from .symplectic import OddSymplecticStructure, VolumeForm

MAX_ATTEMPTS = 40


class Resample(OddSymError):
    """The draw is valid but unsuitable (zero value, wrong sign); try the next one."""


@dataclass
class CaseResult:
    index: int
    passed: bool
    values: dict = field(default_factory=dict)

    def to_dict(self):
        return {"index": self.index, "passed": self.passed, "values": dict(self.values)}


@dataclass
class SuiteResult:
    name: str
    version: int
    params: dict
    cases: list
    summary: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases) and self.summary.get("passed", True)

    def failures(self):
        return [c for c in self.cases if not c.passed]

    def to_dict(self):
        return {
            "suite": self.name,
            "version": self.version,
            "params": dict(self.params),
            "passed": self.passed,
            "summary": {k: v for k, v in self.summary.items()},
            "cases": [c.to_dict() for c in sorted(self.cases, key=lambda c: c.index)],
        }


def case_rng(name, seed, index) -> random.Random:
    return random.Random(f"{name}:{seed}:{index}")


def _attempts(rng, build):
    """Call ``build(rng)`` until it returns without a degeneracy error."""
    last = None
    for _ in range(MAX_ATTEMPTS):
        try:
            return build(rng)
        except OddSymError as exc:
            last = exc
    raise last


def _lift(p, sub, coords, m):
    return p.substitute({v: SuperPolynomial.variable(v, coords, m) for v in sub.names}, coords)


# instance builders
def random_level_set(rng, n, m):
    """``(f, phi, point, dv)`` with the point on ``f = phi = 0`` and invertible ``{f, phi}``."""
    s = OddSymplecticStructure.canonical_structure(n, m)
    c = s.coords
    sub = CoordinateSystem(c.even[:-1], c.odd[:-1])
    one = SuperPolynomial.constant(1, c, m)

    def rp(parity, degree, height):
        return _lift(random_polynomial(rng, sub, m, parity, degree, height=height), sub, c, m)

    xn = SuperPolynomial.variable(c.even[-1], c, m)
    tn = SuperPolynomial.variable(c.odd[-1], c, m)
    f = xn * (one * 2 + rp(0, 1, 1)) - rp(0, 2, 2) + tn * rp(1, 1, 1)
    phi = tn * (one + rp(0, 1, 1)) - rp(1, 2, 2)
    pt = random_point(rng, c, m, positive=True)
    pt[c.even[-1]] = SuperNumber.scalar(0, m)
    pt[c.odd[-1]] = SuperNumber.scalar(0, m)
    f = f - SuperPolynomial.constant(f.evaluate(pt), c, m)
    phi = phi - SuperPolynomial.constant(phi.evaluate(pt), c, m)
    rho = one * 3 + random_polynomial(rng, c, m, 0, 2, height=1, density=0.4)
    return s, LevelSetSurface(f, phi), pt, VolumeForm(rho)


def level_set_point(s, lvl, pt, dv):
    surface = lvl.anchored(pt)
    return SurfacePoint(surface, s, dv, lvl.parameter_point(pt))


def random_reparametrization(rng, params: CoordinateSystem, m, q):
    """``zeta = zeta(zeta~)`` with positive-body Berezinian, fixing the parameter point ``q``."""
    new = []
    for v in params.names:
        lin = SuperPolynomial.variable(v, params, m) * (rng.choice([2, 3]) if params.parity(v) == 0 else 1)
        h = random_polynomial(rng, params, m, params.parity(v), 2, height=1, density=0.3, exclude=(v,))
        new.append(lin + h)
    shift = {name: p.evaluate(q) for name, p in zip(params.names, new)}
    return [p - SuperPolynomial.constant(shift[name], params, m) + SuperPolynomial.constant(q[name], params, m)
            for name, p in zip(params.names, new)]


def reparametrization_berezinian(new, params, q) -> SuperNumber:
    rows = [[p.left_partial(a).evaluate(q) for p in new] for a in params.names]
    return SuperMatrix(rows, params.parities(), params.parities()).berezinian()


def random_graph_surface(rng, n, m):
    s = OddSymplecticStructure.canonical_structure(n, m)
    c = s.coords
    params = CoordinateSystem.parameters(n - 1)
    q = random_polynomial(rng, params, m, 0, 2, height=2)
    r = random_polynomial(rng, params, m, 1, 2, height=2)
    surface = Supersurface.graph(c, q, r, m)
    rho = SuperPolynomial.constant(3, c, m) + random_polynomial(rng, c, m, 0, 2, height=1, density=0.4)
    return s, surface, VolumeForm(rho), random_point(rng, params, m, positive=True)


def _random_even_operator(rng, coords, m):
    par = coords.parities()
    rows = [[random_supernumber(rng, m, (pa + pb) % 2, 3, 2) for pb in par] for pa in par]
    return SuperMatrix(rows, par, par)


def _random_odd_field(rng, coords, point, m):
    comps = [random_polynomial(rng, coords, m, 1 - coords.parity(v), 1, height=3, density=0.6) for v in coords.names]
    comps = [SuperPolynomial.constant(rng.randint(1, 3), coords, m) + p if coords.parity(v) == 1 else p
             for p, v in zip(comps, coords.names)]
    return LocalField(coords, point, [p.shift(point, order=1) for p in comps], 1, m, 1)


def _identity_chart(coords, m):
    return CoordinateChart("id", coords, [SuperPolynomial.variable(v, coords, m) for v in coords.names],
                           [SuperPolynomial.variable(v, coords, m) for v in coords.names], darboux=True, m=m)


# the suites
def suite_jacobi(seed=0, count=100, n=2, m=6, degree=2, height=5):
    s = OddSymplecticStructure.canonical_structure(n, m)
    c = s.coords
    cases = []
    for i in range(count):
        rng = case_rng("jacobi", seed, i)
        polys = [random_polynomial(rng, c, m, rng.randint(0, 1), degree, height=height, density=0.5)
                 for _ in range(3)]
        polys = [p if not p.is_zero() else SuperPolynomial.variable(c.odd[0], c, m) for p in polys]
        r = s.jacobi_residual(*polys)
        cases.append(CaseResult(i, r.is_zero(), {"f": str(polys[0]), "g": str(polys[1]), "h": str(polys[2]),
                                                 "residual": str(r)}))
    return SuiteResult("jacobi", 1, {"seed": seed, "count": count, "n": n, "generators": m, "degree": degree,
                                     "height": height}, cases)


def suite_bracket_table(seed=0, count=6, n=2, m=6, degree=2):
    """Darboux-flagged charts reproduce the canonical bracket table; shears generally do not."""
    s = OddSymplecticStructure.canonical_structure(n, m)
    c = s.coords
    cases = []
    for i in range(count):
        rng = case_rng("bracket-table", seed, i)
        chart = random_darboux_chart(rng, c, m, steps=3, degree=degree)
        bad = chart.darboux_failures(s)
        vals = {"chart": [str(p) for p in chart.to], "failures": str(bad), "inverse": chart.check_inverse()}
        cases.append(CaseResult(i, not bad and chart.check_inverse(), vals))
    return SuiteResult("bracket-table", 1, {"seed": seed, "count": count, "n": n, "generators": m}, cases)


def suite_gamma_cocycle(seed=0, count=25, n=2, m=6, degree=4):
    """``Gamma^w_z + Gamma^u_w + Gamma^z_u = 0`` on pairs transported between three random charts."""
    base = CoordinateSystem.ambient(n)
    cases = []
    for i in range(count):
        rng = case_rng("gamma-cocycle", seed, i)

        def build(rng):
            charts = [random_chart(rng, base, m, steps=2, degree=degree, name=f"c{k}") for k in range(3)]
            pt = random_point(rng, base, m)
            op = _random_even_operator(rng, base, m)
            x = _random_odd_field(rng, base, pt, m)
            z_map = charts[0].local_map(pt)
            op_z, x_z = z_map.push_operator(op), z_map.push_field(x)
            zw = transition(charts[0], charts[1], pt)
            wu = transition(charts[1], charts[2], pt)
            uz = transition(charts[2], charts[0], pt)
            op_w, x_w = zw.push_operator(op_z), zw.push_field(x_z)
            op_u, x_u = wu.push_operator(op_w), wu.push_field(x_w)
            terms = [gamma(op_z, x_z.value(), zw), gamma(op_w, x_w.value(), wu), gamma(op_u, x_u.value(), uz)]
            by_def = gamma_by_definition(op_z, x_z, zw)
            return terms, by_def

        terms, by_def = _attempts(rng, build)
        total = terms[0] + terms[1] + terms[2]
        cases.append(CaseResult(i, total.is_zero() and by_def == terms[0],
                                {"terms": [str(t) for t in terms], "sum": str(total),
                                 "definition_matches": by_def == terms[0]}))
    return SuiteResult("gamma-cocycle", 1, {"seed": seed, "count": count, "n": n, "generators": m,
                                            "degree": degree}, cases)


def suite_dcan_invariance(seed=0, count=20, m=6, dims=(1, 2)):
    """``d_can`` over the identity, two random Darboux charts and a reparametrizing chart."""
    cases = []
    for i in range(count):
        n = dims[i % len(dims)]
        rng = case_rng("dcan-invariance", seed, i)
        s = OddSymplecticStructure.canonical_structure(n, m)
        c = s.coords
        ident = _identity_chart(c, m)
        x1 = c.even[0]

        def build(rng):
            pt = random_point(rng, c, m, positive=True)
            f = SuperPolynomial.variable(c.even[-1], c, m) + random_polynomial(rng, c, m, 0, 2, height=2, density=0.4)
            phi = SuperPolynomial.variable(c.odd[-1], c, m) + random_polynomial(rng, c, m, 1, 2, height=2,
                                                                              density=0.4)
            pair, _ = level_set_pair(f, phi, s, pt)
            pair.validate(s.lower_at(pt), s)
            a, b = rng.randint(1, 3), rng.randint(1, 3)
            curve = SuperPolynomial.parse(f"{a}*{x1}^2+{b}*{x1}", c, m)
            beta = SuperPolynomial.parse(f"g{rng.randint(1, m)}*{x1}", c, m)
            charts = [ident, random_darboux_chart(rng, c, m, name="d1"), random_darboux_chart(rng, c, m, name="d2"),
                      reparam_chart(curve, beta, c, name="reparam")]
            for ch in charts:
                ch.verify_darboux(s, [pt])
            return pt, pair, charts

        pt, pair, charts = _attempts(rng, build)
        vals = [d_can(pair, transition(ident, ch, pt)) for ch in charts]
        ok = all(v == vals[0] for v in vals)
        cases.append(CaseResult(i, ok, {"n": n, "values": {ch.name: str(v) for ch, v in zip(charts, vals)}}))
    return SuiteResult("dcan-invariance", 1, {"seed": seed, "count": count, "generators": m,
                                              "dims": list(dims)}, cases)


def one_one_covariance(psi: SuperPolynomial, curve: SuperPolynomial, beta: SuperPolynomial, point, m=6):
    """In E^{1.1}: ``Psi d/dth`` pushed through ``x' = f(x), th' = th/f' + beta`` is ``Psi/f' d/dth'``,
    and ``d_can(id, Psi) = dPsi/dth`` in both charts.  Returns ``(ok, details)``."""
    c = psi.coords
    x, t = c.even[0], c.odd[0]
    if not curve.left_partial(t).is_zero() or not beta.left_partial(t).is_zero():
        raise NotDarboux("f and beta must be functions of x alone")
    zero = SuperPolynomial.zero(c, m)
    field = LocalField(c, point, [zero.shift(point, order=1), psi.shift(point, order=1)], 1, m, 1)
    chart = reparam_chart(curve, beta, c)
    lm = chart.local_map(point)
    pushed = lm.push_field(field)
    fprime = curve.left_partial(x).evaluate(point)
    expected = [SuperNumber.scalar(0, m), psi.evaluate(point) * fprime.inverse()]
    ident = SuperMatrix([[SuperNumber.scalar(1 if a == b else 0, m) for b in range(2)] for a in range(2)],
                        c.parities(), c.parities())
    before = d_can(OddNormalPair(ident, field), LocalMap.identity(c, point, m))
    after = d_can(OddNormalPair(ident, pushed), LocalMap.identity(c, lm.target_point(), m))
    want = psi.left_partial(t).evaluate(point)
    ok = pushed.value() == expected and before == want and after == want
    return ok, {"pushed": [str(v) for v in pushed.value()], "expected": [str(v) for v in expected],
                "dcan_before": str(before), "dcan_after": str(after), "dPsi/dth": str(want)}


def suite_trunc_div(seed=0, count=10, m=6, dims=(2, 3), reparams=3):
    """Truncated divergence: the closed formula against the prolongation definition, and weight 0."""
    cases = []
    for i in range(count):
        n = dims[i % len(dims)]
        rng = case_rng("trunc-div-prolongation", seed, i)

        def build(rng):
            s, lvl, pt, dv = random_level_set(rng, n, m)
            sp = level_set_point(s, lvl, pt, dv)
            orient = level_set_orientation(lvl, s, pt)
            closed = sp.truncated_divergence(orient)
            if closed.is_zero():
                raise Resample("zero value")
            c = s.coords
            v = [random_polynomial(rng, c, m, 1 - c.parity(a), 1, height=2, density=0.5) for a in c.names]
            w = [random_polynomial(rng, c, m, c.parity(a), 1, height=2, density=0.5) for a in c.names]
            plain, psi = truncated_divergence_by_prolongation(sp, lvl)
            extra, _ = truncated_divergence_by_prolongation(sp, lvl, extra=(v, w))
            others = []
            for _ in range(reparams):
                new = random_reparametrization(rng, sp.surface.params, m, sp.q)
                if reparametrization_berezinian(new, sp.surface.params, sp.q).body() <= 0:
                    raise Resample("orientation-reversing reparametrization")
                sp2 = SurfacePoint(sp.surface.reparametrize(new), s, dv, sp.q)
                others.append(sp2.truncated_divergence(orient))
            return closed, plain, extra, others, psi == orient

        closed, plain, extra, others, same_psi = _attempts(rng, build)
        ok = closed == plain == extra and all(o == closed for o in others) and same_psi
        cases.append(CaseResult(i, ok, {"n": n, "closed_form": str(closed), "prolongation": str(plain),
                                        "prolongation_with_extras": str(extra),
                                        "reparametrized": [str(o) for o in others]}))
    return SuiteResult("trunc-div-prolongation", 1, {"seed": seed, "count": count, "generators": m,
                                                     "dims": list(dims), "reparams": reparams}, cases)


def suite_semidensity_weight(seed=0, count=10, m=6, dims=(2, 3)):
    """``A(zeta~) = A(zeta) Ber(d zeta / d zeta~)^(1/2)`` and ``A^2 = 0``."""
    cases = []
    for i in range(count):
        n = dims[i % len(dims)]
        rng = case_rng("semidensity-weight", seed, i)

        def build(rng):
            s, surface, dv, q = random_graph_surface(rng, n, m)
            a1 = SurfacePoint(surface, s, dv, q).semidensity()
            if a1.is_zero():
                raise Resample("zero value")
            new = random_reparametrization(rng, surface.params, m, q)
            ber = reparametrization_berezinian(new, surface.params, q)
            if ber.body() <= 0:
                raise Resample("orientation-reversing reparametrization")
            a2 = SurfacePoint(surface.reparametrize(new), s, dv, q).semidensity()
            return a1, a2, ber

        a1, a2, ber = _attempts(rng, build)
        root = Surd.sqrt(ber)
        squares = (a1 * a1).is_zero() and (a2 * a2).is_zero()
        ok = a2 == a1 * root and squares
        ratio = "sqrt(Ber)" if a2 == a1 * root else "mismatch"
        cases.append(CaseResult(i, ok, {"n": n, "ratio": ratio, "Ber": str(ber), "sqrt_Ber": str(root),
                                        "A": str(a1), "A_reparametrized": str(a2), "squares_vanish": squares}))
    return SuiteResult("semidensity-weight", 1, {"seed": seed, "count": count, "generators": m,
                                                 "dims": list(dims)}, cases)


def suite_dual_gauge(seed=0, count=10, m=6, dims=(2, 3)):
    """``A~(a f + alpha phi, beta f + b phi) = A~(f, phi) Ber(g)^(1/2)``."""
    cases = []
    for i in range(count):
        n = dims[i % len(dims)]
        rng = case_rng("dual-gauge", seed, i)

        def build(rng):
            s, lvl, pt, dv = random_level_set(rng, n, m)
            c = s.coords
            a = SuperPolynomial.constant(rng.randint(2, 4), c, m) + random_polynomial(rng, c, m, 0, 1, 1, 0.5)
            b = SuperPolynomial.constant(rng.randint(2, 4), c, m) + random_polynomial(rng, c, m, 0, 1, 1, 0.5)
            if a.evaluate(pt).body() <= 0 or b.evaluate(pt).body() <= 0:
                raise Resample("multiplier with non-positive body")
            al = random_polynomial(rng, c, m, 1, 1, 1, 0.5)
            be = random_polynomial(rng, c, m, 1, 1, 1, 0.5)
            a1 = semidensity_dual(lvl, s, dv, pt)
            if a1.is_zero():
                raise Resample("zero value")
            mixed = LevelSetSurface(a * lvl.f + al * lvl.phi, be * lvl.f + b * lvl.phi)
            a2 = semidensity_dual(mixed, s, dv, pt)
            g = SuperMatrix([[a.evaluate(pt), al.evaluate(pt)], [be.evaluate(pt), b.evaluate(pt)]], [0, 1], [0, 1])
            return a1, a2, g.berezinian()

        a1, a2, ber = _attempts(rng, build)
        ok = a2 == a1 * Surd.sqrt(ber)
        cases.append(CaseResult(i, ok, {"n": n, "dual": str(a1), "dual_mixed": str(a2), "Ber": str(ber)}))
    return SuiteResult("dual-gauge", 1, {"seed": seed, "count": count, "generators": m, "dims": list(dims)}, cases)


def suite_dual_vs_geometric(seed=0, count=12, m=6, dims=(2, 3)):
    """One constant ``c`` with ``A = c A~ K`` over level-set instances (``K`` the dual pairing)."""
    cases = []
    pairs = []
    for i in range(count):
        n = dims[i % len(dims)]
        rng = case_rng("dual-vs-geometric", seed, i)

        def build(rng):
            s, lvl, pt, dv = random_level_set(rng, n, m)
            sp = level_set_point(s, lvl, pt, dv)
            a = sp.semidensity(level_set_orientation(lvl, s, pt))
            dual = semidensity_dual(lvl, s, dv, pt)
            k = dual_pairing(sp, lvl)
            if a.is_zero() or dual.is_zero():
                raise Resample("zero value")
            return a, dual, k

        a, dual, k = _attempts(rng, build)
        pairs.append((a, dual * k))
        cases.append(CaseResult(i, True, {"n": n, "pairing": str(k), "A": str(a), "dual": str(dual)}))
    summary = {}
    try:
        c = cross_check_constant(pairs)
        summary = {"constant": str(c), "passed": True}
    except InconsistentConstant as exc:
        summary = {"constant": None, "passed": False, "reason": str(exc)}
    return SuiteResult("dual-vs-geometric", 1, {"seed": seed, "count": count, "generators": m,
                                                "dims": list(dims)}, cases, summary)


def suite_euclid(seed=0, count=4, tol=1e-9):
    """Sphere ratios ``-(n-1)/R``, plane and helicoid ``0``, and the weight-1 law."""
    cases = []
    idx = 0
    for i in range(count):
        rng = case_rng("euclid-oracle", seed, i)
        for n in (3, 4):
            radius = rng.choice([1, 2, 3, 0.5])
            t = [rng.uniform(0.3, 2.8) for _ in range(n - 1)]
            got = euclid.mean_curvature_ratio(euclid.sphere(radius, n), t, outward_from=[0] * n)
            want = -(n - 1) / radius
            cases.append(CaseResult(idx, abs(got - want) <= tol, {"surface": f"sphere R={radius} in E{n}",
                                                                  "ratio": repr(got), "expected": repr(want)}))
            idx += 1
        t = [rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)]
        for name, surf in (("plane", euclid.plane()), ("helicoid", euclid.helicoid(rng.choice([1, 2])))):
            got = euclid.mean_curvature_ratio(surf, t)
            cases.append(CaseResult(idx, abs(got) <= tol, {"surface": name, "ratio": repr(got), "expected": "0"}))
            idx += 1
        a, b = rng.choice([2, 3]), rng.choice([1, 2])
        new = [f"s1+s2^2/{10 * b}", f"{a}*s2"]
        sph = euclid.sphere(2, 3)
        s = [rng.uniform(0.4, 0.9), rng.uniform(0.2, 0.5)]
        tt = [s[0] + s[1] ** 2 / (10 * b), a * s[1]]
        h1 = euclid.mean_curvature_density(sph, tt, [0, 0, 0])
        h2 = euclid.mean_curvature_density(sph.reparametrize(new, ("s1", "s2")), s, [0, 0, 0])
        jac = abs(euclid.jacobian_determinant(new, ("s1", "s2"), s))
        cases.append(CaseResult(idx, abs(h2 - h1 * jac) <= tol * max(1.0, abs(h2)),
                                {"surface": "sphere R=2 reparametrized", "H": repr(h1), "H_new": repr(h2),
                                 "jacobian": repr(jac)}))
        idx += 1
    return SuiteResult("euclid-oracle", 1, {"seed": seed, "count": count, "tolerance": tol}, cases)


SUITES = {
    "jacobi": suite_jacobi,
    "bracket-table": suite_bracket_table,
    "gamma-cocycle": suite_gamma_cocycle,
    "dcan-invariance": suite_dcan_invariance,
    "trunc-div-prolongation": suite_trunc_div,
    "semidensity-weight": suite_semidensity_weight,
    "dual-gauge": suite_dual_gauge,
    "dual-vs-geometric": suite_dual_vs_geometric,
    "euclid-oracle": suite_euclid,
}


def run_suite(name, **params) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    return SUITES[name](**params)
