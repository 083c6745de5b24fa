import random

import pytest

from oddsym.errors import SingularBody
from oddsym.generators import random_supernumber
from oddsym.grassmann import SuperNumber
from oddsym.superlinalg import SuperMatrix, apply

M = 6


def sn(t):
    return SuperNumber.parse(t, M)


def random_even_matrix(rng, par):
    rows = []
    for i, pi in enumerate(par):
        row = []
        for j, pj in enumerate(par):
            body = (3 if i == j else rng.randint(-1, 1)) if pi == pj else None
            row.append(random_supernumber(rng, M, (pi + pj) % 2, height=2, terms=2, body=body))
        rows.append(row)
    return SuperMatrix(rows, par, par)


def test_diagonal_berezinian():
    d = SuperMatrix([[sn("3"), sn("0")], [sn("0"), sn("2")]], [0, 1], [0, 1])
    assert d.berezinian() == sn("3/2")


def test_inverse_and_multiplicativity():
    rng = random.Random(11)
    par = [0, 0, 1, 1]
    for _ in range(5):
        a, b = random_even_matrix(rng, par), random_even_matrix(rng, par)
        assert a @ a.inverse() == SuperMatrix.identity(par, sn("0"))
        assert (a @ b).berezinian() == a.berezinian() * b.berezinian()
        assert a.inverse().berezinian() == a.berezinian().inverse()


def test_apply_is_row_times_matrix():
    a = SuperMatrix([[sn("1"), sn("g1")], [sn("g2"), sn("2")]], [0, 1], [0, 1])
    v = [sn("1"), sn("g3")]
    out = apply(a, v)
    assert out[0] == sn("1") + sn("g3") * sn("g2")
    assert out[1] == sn("g1") + sn("g3") * sn("2")


def test_singular_body_rejected():
    a = SuperMatrix([[sn("g1*g2"), sn("g3")], [sn("g4"), sn("1")]], [0, 1], [0, 1])
    with pytest.raises(SingularBody):
        a.inverse()
    assert a.berezinian() == sn("g1*g2 - g3*g4")
    b = SuperMatrix([[sn("1"), sn("g3")], [sn("g4"), sn("g1*g2")]], [0, 1], [0, 1])
    with pytest.raises(SingularBody):
        b.berezinian()
