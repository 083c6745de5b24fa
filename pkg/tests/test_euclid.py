import math

import pytest

from oddsym import euclid
from oddsym.errors import NotOrthogonal, ParseError


@pytest.mark.parametrize("n, radius", [(3, 1), (3, 2.5), (4, 1), (4, 3)])
def test_sphere_ratio(n, radius):
    t = [0.7, 1.1, 0.4][: n - 1]
    got = euclid.mean_curvature_ratio(euclid.sphere(radius, n), t, outward_from=[0] * n)
    assert abs(got + (n - 1) / radius) < 1e-9


@pytest.mark.parametrize("surface", [euclid.plane(3), euclid.plane(4), euclid.helicoid(1), euclid.helicoid(2.5)])
def test_minimal_surfaces(surface):
    t = [0.3, 1.2, -0.5][: surface.dim - 1]
    assert abs(euclid.mean_curvature_ratio(surface, t)) < 1e-9


def test_cylinder():
    assert abs(euclid.mean_curvature_ratio(euclid.cylinder(2), [0.4, 1.0], outward_from=[0, 0, 1]) + 0.5) < 1e-9


def test_density_has_weight_one():
    sphere = euclid.sphere(2, 3)
    old_of_new = ["s1 + s2^2/5", "2*s2 + s1/3"]
    new = sphere.reparametrize(old_of_new, ("s1", "s2"))
    s = [0.6, 0.5]
    t = [s[0] + s[1] ** 2 / 5, 2 * s[1] + s[0] / 3]
    jac = euclid.jacobian_determinant(old_of_new, ("s1", "s2"), s)
    h_old = euclid.mean_curvature_density(sphere, t, outward_from=[0, 0, 0])
    h_new = euclid.mean_curvature_density(new, s, outward_from=[0, 0, 0])
    assert abs(h_new - h_old * abs(jac)) < 1e-9


def test_finite_difference_fallback():
    surface = euclid.Hypersurface([lambda a, b: math.cos(a) * math.sin(b), lambda a, b: math.sin(a) * math.sin(b),
                                   lambda a, b: math.cos(b)])
    assert not surface.symbolic
    got = euclid.mean_curvature_ratio(surface, [0.4, 1.1], outward_from=[0, 0, 0])
    assert abs(got + 2) < 1e-5


def test_non_orthogonal_field_rejected():
    with pytest.raises(NotOrthogonal):
        euclid.normal_divergence(euclid.plane(3), [1, 0, 0], [0.1, 0.2])


def test_parse_errors():
    with pytest.raises(ParseError):
        euclid.Hypersurface(["t1", "t3", "0"])
