import random

from hypothesis import given, settings
from hypothesis import strategies as st

from oddsym.generators import random_polynomial
from oddsym.superpoly import SuperPolynomial, VectorField
from oddsym.symplectic import OddSymplecticStructure, VolumeForm, delta_operator, divergence

M = 6
S1 = OddSymplecticStructure.canonical_structure(1, M)
S2 = OddSymplecticStructure.canonical_structure(2, M)


def p(text, s=S1):
    return SuperPolynomial.parse(text, s.coords, M)


def test_canonical_brackets():
    assert S1.bracket(p("x1"), p("th1")) == p("1")
    assert S1.bracket(p("x1*th1"), p("th1")) == p("th1")
    assert S1.bracket(p("x1"), p("x1")).is_zero()


def test_hamiltonian_field_of_x():
    comps = S1.hamiltonian_field(p("x1")).components
    assert [str(c) for c in comps] == ["0", "1"]


def test_divergence_examples():
    assert divergence(VectorField([p("x1"), p("0")], S1.coords, 0), VolumeForm.trivial(S1.coords, M)) == p("1")
    field = VectorField([p(t, S2) for t in ("0", "0", "1", "0")], S2.coords, 1)
    assert divergence(field, VolumeForm(p("1 + g1*th1", S2))) == p("-g1", S2)


def test_delta_is_divergence_of_hamiltonian_field():
    dv = VolumeForm(p("2 + g1*th2 + g1*g2*th1*th2", S2))
    f = p("x1*th1 + x2^2*th2", S2)
    assert delta_operator(f, S2, dv) == divergence(S2.hamiltonian_field(f), dv)
    assert delta_operator(p("x1*th1", S2), S2, VolumeForm.trivial(S2.coords, M)) == p("-2", S2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 1), st.integers(0, 1))
def test_bracket_symmetry(seed, pf, pg):
    rng = random.Random(seed)
    f = random_polynomial(rng, S2.coords, M, pf, 2)
    g = random_polynomial(rng, S2.coords, M, pg, 2)
    sign = -((-1) ** ((pf + 1) * (pg + 1)))
    assert S2.bracket(f, g) == S2.bracket(g, f) * sign


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_jacobi_residual_vanishes(seed):
    rng = random.Random(seed)
    f, g, h = (random_polynomial(rng, S2.coords, M, rng.randint(0, 1), 2) for _ in range(3))
    assert S2.jacobi_residual(f, g, h).is_zero()


def test_validate_accepts_canonical():
    S2.validate()
