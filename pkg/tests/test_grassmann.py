import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oddsym.errors import NegativeBody, ZeroBody
from oddsym.generators import random_supernumber
from oddsym.grassmann import SuperNumber, Surd, merge_sign, squarefree_split

M = 6


def sn(text, m=M):
    return SuperNumber.parse(text, m)


@st.composite
def homogeneous(draw, parity=None):
    seed = draw(st.integers(0, 10 ** 6))
    p = draw(st.integers(0, 1)) if parity is None else parity
    return random_supernumber(random.Random(seed), M, p, height=4, terms=3)


def test_body_parity_examples():
    assert sn("3 + g1*g2").body() == 3
    assert sn("g1").parity() == "odd"
    assert sn("1 + g1").parity() == "mixed"
    assert sn("g1*g2").parity() == "even"


def test_anticommutation_and_sign():
    g1, g2 = sn("g1"), sn("g2")
    assert g1 * g2 == -(g2 * g1)
    assert (g1 * g1).is_zero()
    assert merge_sign(0b10, 0b01) == -1
    assert sn("g2*g1") == sn("-g1*g2")


@settings(max_examples=60, deadline=None)
@given(homogeneous(), homogeneous())
def test_supercommutativity(a, b):
    pa = 1 if a.parity() == "odd" else 0
    pb = 1 if b.parity() == "odd" else 0
    assert a * b == b * a * (-1) ** (pa * pb)


@settings(max_examples=40, deadline=None)
@given(homogeneous(), homogeneous(), homogeneous())
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(homogeneous(parity=0))
def test_inverse_two_sided(a):
    a = a + 3 if a.body() == 0 else a
    if a.body() == 0:
        return
    one = SuperNumber.scalar(1, M)
    assert a * a.inverse() == one and a.inverse() * a == one


@settings(max_examples=40, deadline=None)
@given(homogeneous(), homogeneous())
def test_soul_nilpotent_and_text_roundtrip(a, b):
    x = a + b
    assert (x.soul() ** (M + 1)).is_zero()
    assert SuperNumber.parse(str(x), M) == x
    assert str(SuperNumber.parse(str(x), M)) == str(x)


def test_zero_body_inverse_rejected():
    with pytest.raises(ZeroBody):
        sn("g1*g2").inverse()


def test_squarefree_split():
    assert squarefree_split(Fraction(12)) == (2, 3)
    k, r = squarefree_split(Fraction(7, 16))
    assert r == 7 and k == Fraction(1, 4)
    with pytest.raises(NegativeBody):
        squarefree_split(Fraction(-7, 16))


def test_surd_arithmetic():
    a = Surd.sqrt(sn("3 + g1*g2"))
    assert a * a == Surd(sn("3 + g1*g2"))
    assert a * a.inverse() == Surd(SuperNumber.scalar(1, M))
    assert Surd.sqrt(sn("4")) == Surd(sn("2"))
    assert Surd.sqrt(sn("2")) * Surd.sqrt(sn("6")) == Surd(sn("2")) * Surd.sqrt(sn("3"))
    with pytest.raises(NegativeBody):
        Surd.sqrt(sn("-2"))
