import pytest

from oddsym.charts import (CoordinateChart, LocalField, OddNormalPair, d_can, gamma, gamma_by_definition,
                           level_set_pair, transition)
from oddsym.errors import PairValidationError
from oddsym.generators import random_chart, random_darboux_chart
from oddsym.grassmann import SuperNumber
from oddsym.superlinalg import SuperMatrix
from oddsym.superpoly import SuperPolynomial, VectorField
from oddsym.suites import one_one_covariance
from oddsym.symplectic import OddSymplecticStructure

M = 6
S1 = OddSymplecticStructure.canonical_structure(1, M)
S2 = OddSymplecticStructure.canonical_structure(2, M)


def p(text, s=S1):
    return SuperPolynomial.parse(text, s.coords, M)


def sn(text):
    return SuperNumber.parse(text, M)


def identity_chart(s):
    return CoordinateChart("id", s.coords, [p(v, s) for v in s.coords.names], m=M)


def theta_pair(psi_text, pt):
    field = LocalField.from_field(VectorField([p("0"), p(psi_text)], S1.coords, 1), pt, M)
    return OddNormalPair(SuperMatrix.identity(S1.coords.parities(), sn("0")), field)


PT1 = {"x1": SuperNumber.parse("1 + g4*g5", M), "th1": SuperNumber.parse("g6", M)}


def test_dcan_is_theta_derivative_in_one_one():
    psi = p("2 + x1^2 + g3*x1*th1")
    pair = theta_pair(str(psi), PT1)
    ident = identity_chart(S1)
    assert d_can(pair, transition(ident, ident, PT1)) == psi.left_partial("th1").evaluate(PT1)


def test_dcan_constant_coefficients():
    # Psi = (a + b th) d/dth with odd b; the left derivative gives -b
    pair = theta_pair("3 + g1*g2 + g3*th1", PT1)
    ident = identity_chart(S1)
    assert d_can(pair, transition(ident, ident, PT1)) == sn("-g3")


def test_dcan_same_in_darboux_charts():
    pair = theta_pair("3 + g1*g2 + g3*th1 + x1*g4*th1", PT1)
    ident = identity_chart(S1)
    values = {str(d_can(pair, transition(ident, random_darboux_chart(k, S1.coords, M), PT1))) for k in range(3)}
    assert len(values) == 1


def test_one_one_covariance():
    x = {"x1": SuperNumber.parse("2", M), "th1": SuperNumber.parse("g1", M)}
    ok, details = one_one_covariance(p("3 + x1 + g2*th1"), p("x1^2"), p("g3*x1"), x, M)
    assert ok, details


def test_gamma_vanishes_for_linear_transition():
    pair = theta_pair("3 + g1*g2 + g3*th1", PT1)
    lin = CoordinateChart("lin", S1.coords, [p("2*x1 + g1*th1"), p("3*th1 + g2*x1")], m=M)
    ident = SuperMatrix.identity(S1.coords.parities(), sn("0"))
    assert gamma(ident, pair.psi.value(), transition(identity_chart(S1), lin, PT1)).is_zero()


def test_gamma_matches_definition():
    pt = {"x1": sn("1 + g1*g2"), "x2": sn("2"), "th1": sn("g1"), "th2": sn("g3")}
    field = LocalField.from_field(
        VectorField([p(t, S2) for t in ("x1*th1", "th2", "x1^2", "x2*th1*th2")], S2.coords, 1), pt, M)
    par = S2.coords.parities()
    op = SuperMatrix([[sn("1 + g1*g2" if i == j else ("0" if (i < 2) == (j < 2) else "g1")) for j in range(4)]
                      for i in range(4)], par, par)
    for k in range(2):
        lm = random_chart(k, S2.coords, M).local_map(pt)
        assert gamma(op, field.value(), lm) == gamma_by_definition(op, field, lm)


def test_level_set_pair_validates():
    pt = {"x1": sn("1 + g1*g2"), "x2": sn("2"), "th1": sn("g1"), "th2": sn("g3")}
    pair, _ = level_set_pair(p("x2 - x1^2 + g1*th1", S2), p("th2 + x1*th1 + g2*x2", S2), S2, pt)
    pair.validate(S2.lower_at(pt), S2)


def test_nilpotent_psi_rejected():
    pair = theta_pair("g1*g2 + g3*th1", PT1)
    with pytest.raises(PairValidationError):
        pair.validate(S1.lower_at(PT1), S1)
