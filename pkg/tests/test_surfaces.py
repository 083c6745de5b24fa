import random

import pytest

from oddsym.errors import InconsistentConstant
from oddsym.grassmann import SuperNumber, Surd
from oddsym.suites import _attempts, level_set_point, random_level_set
from oddsym.superpoly import CoordinateSystem, SuperPolynomial
from oddsym.surfaces import (LevelSetSurface, Supersurface, SurfacePoint, cross_check_constant, dual_pairing,
                             level_set_orientation, semidensity_dual, truncated_divergence_by_prolongation)
from oddsym.symplectic import OddSymplecticStructure, VolumeForm, divergence_at

M = 6


def sn(text):
    return SuperNumber.parse(text, M)


def flat_point(n, rho="1", frame=None):
    s = OddSymplecticStructure.canonical_structure(n, M)
    params = CoordinateSystem.parameters(n - 1)
    zero = SuperPolynomial.zero(params, M)
    surface = Supersurface.graph(s.coords, zero, zero, M)
    q = {v: sn("1") if v.startswith("xi") else sn("g2") for v in params.names}
    return SurfacePoint(surface, s, VolumeForm(SuperPolynomial.parse(rho, s.coords, M)), q, frame=frame)


@pytest.mark.parametrize("n", [2, 3])
def test_flat_semidensity(n):
    assert flat_point(n).semidensity().is_zero()
    sp = flat_point(n, f"1 + g1*th{n}")
    assert sp.semidensity() == Surd(sn("-g1"))
    _, psi = sp.normalized_psi()
    assert [str(x) for x in psi] == ["0"] * (2 * n - 1) + ["1"]


def test_flat_projector_is_normal_plane():
    _, pi = flat_point(2).projectors()
    diag = [str(pi[i, i]) for i in range(4)]
    assert diag == ["0", "1", "0", "1"]


@pytest.mark.parametrize("which, factor, expected", [(0, 4, "2"), (1, 4, "1/2"), (0, 9, "3")])
def test_psi_scales_with_frame(which, factor, expected):
    frame = flat_point(2).frame
    frame[which] = [SuperNumber.scalar(factor, M) * x for x in frame[which]]
    _, psi = flat_point(2, frame=frame).normalized_psi()
    assert str(psi[-1]) == expected


def random_level_point(seed, n=2, then=None):
    def build(rng):
        s, lvl, pt, dv = random_level_set(rng, n, M)
        sp = level_set_point(s, lvl, pt, dv)
        return then(s, lvl, pt, dv, sp) if then else (s, lvl, pt, dv, sp)
    return _attempts(random.Random(seed), build)


def test_truncated_divergence_matches_prolongation():
    s, lvl, pt, dv, sp = random_level_point(1)
    orient = level_set_orientation(lvl, s, pt)
    value, psi = truncated_divergence_by_prolongation(sp, lvl)
    assert sp.truncated_divergence(orient) == value


def test_dual_semidensity_flat():
    s = OddSymplecticStructure.canonical_structure(2, M)
    c = s.coords
    pt = {"x1": sn("1"), "x2": sn("0"), "th1": sn("g1"), "th2": sn("0")}
    lvl = LevelSetSurface(SuperPolynomial.parse("x2", c, M), SuperPolynomial.parse("th2", c, M))
    dv = VolumeForm(SuperPolynomial.parse("1 + g1*th2", c, M))
    assert semidensity_dual(lvl, s, dv, pt) == Surd(sn("-g1"))


def _mutated_dual(lvl, s, dv, pt):
    # the dual formula with the sign of k flipped
    fphi_poly = s.bracket(lvl.f, lvl.phi)
    inv = fphi_poly.evaluate(pt).inverse()
    k = s.bracket(lvl.f, lvl.f).evaluate(pt) * inv * sn("-1/2")
    inner = (divergence_at(s.hamiltonian_field(lvl.f), dv, pt) + k * divergence_at(s.hamiltonian_field(lvl.phi), dv, pt)
             - (s.bracket(lvl.f, fphi_poly).evaluate(pt) + k * s.bracket(lvl.phi, fphi_poly).evaluate(pt)) * inv * 2)
    return Surd.sqrt(fphi_poly.evaluate(pt) * (1 if inv.body() > 0 else -1)).inverse() * inner


def test_cross_check_constant_and_mutation():
    good, bad = [], []
    for seed in range(6):
        def values(s, lvl, pt, dv, sp):
            a = sp.semidensity(level_set_orientation(lvl, s, pt))
            k = dual_pairing(sp, lvl)
            return (a, semidensity_dual(lvl, s, dv, pt) * k), (a, _mutated_dual(lvl, s, dv, pt) * k)
        g, b = random_level_point(seed, 2 + seed % 2, values)
        good.append(g)
        bad.append(b)
    assert cross_check_constant(good) == Surd(sn("1"))
    with pytest.raises(InconsistentConstant):
        cross_check_constant(bad)
