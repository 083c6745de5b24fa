import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddsym.errors import ParityViolation, ParseError, UnknownSymbol
from oddsym.generators import random_polynomial
from oddsym.grassmann import SuperNumber
from oddsym.superpoly import CoordinateSystem, SuperPolynomial

M = 6
E11 = CoordinateSystem(("x",), ("th",))
E22 = CoordinateSystem.ambient(2)


def p(text, c=E22):
    return SuperPolynomial.parse(text, c, M)


def test_left_partial_examples():
    assert p("x*th", E11).left_partial("th") == p("x", E11)
    assert p("th2*th1").left_partial("th1") == p("-th2")
    assert p("x1^2*th1*th2").left_partial("x1") == p("2*x1*th1*th2")


def test_substitute_examples():
    c2 = CoordinateSystem(("y",), ("eta",))
    f = p("x*th", E11)
    out = f.substitute({"x": SuperPolynomial.parse("y", c2, M), "th": SuperPolynomial.parse("eta + g1*y", c2, M)}, c2)
    assert out == SuperPolynomial.parse("y*eta + g1*y^2", c2, M)
    ident = {v: SuperPolynomial.variable(v, E11, M) for v in E11.names}
    assert f.substitute(ident, E11) == f
    with pytest.raises(ParityViolation):
        f.substitute({"x": p("x", E11), "th": p("x", E11)}, E11)


def test_evaluate_examples():
    sn = lambda t: SuperNumber.parse(t, M)  # noqa: E731
    assert p("x*th", E11).evaluate({"x": sn("2"), "th": sn("g1")}) == sn("2*g1")
    assert p("th1*th2").evaluate({"x1": sn("0"), "x2": sn("0"), "th1": sn("g1"), "th2": sn("g1")}).is_zero()
    assert p("x^2", E11).evaluate({"x": sn("1 + g1*g2"), "th": sn("0")}) == sn("1 + 2*g1*g2")


def test_parity_and_nondegeneracy():
    assert p("x*th", E11).parity() == "odd"
    assert p("x + th", E11).parity() == "mixed"
    assert not p("g1*g2*x1").is_nondegenerate()


def test_parser_examples():
    f = p("x1*th1 + 1/2")
    assert f.parity() == "mixed" and len(f.terms) == 2
    with pytest.raises(ParseError):
        p("th1*th1")
    with pytest.raises(ParseError):
        p("th1^2")
    with pytest.raises(UnknownSymbol):
        p("y7")
    with pytest.raises(ParseError) as info:
        p("x1 + * th1")
    assert info.value.position is not None
    # th2*g1 = -g1*th2, so the difference is 2*g1*th2
    assert str(p("g1*th2 - th2*g1")) == "2*g1*th2"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(0, 1))
def test_print_parse_roundtrip(seed, parity):
    f = random_polynomial(random.Random(seed), E22, M, parity, 3, height=5, density=0.5)
    text = str(f)
    assert p(text) == f
    assert str(p(text)) == text
