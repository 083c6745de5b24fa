"""Seeded random instances: superpolynomials, Lambda-points, polynomial charts
(Darboux and general) with exact polynomial inverses, and the non-polynomial
Darboux charts ``x' = f(x), th' = th / f'(x) + beta(x)`` in jet form.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .charts import CoordinateChart
from .grassmann import SuperNumber
from .superpoly import CoordinateSystem, SuperPolynomial


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_supernumber(rng, m, parity, height=3, terms=3, body=None, max_gens=None):
    """A homogeneous Grassmann number; ``body`` forces the scalar part (even only)."""
    gens = max_gens if max_gens is not None else m
    out = {}
    if parity == 0:
        b = body if body is not None else rng.randint(-height, height)
        if b:
            out[0] = Fraction(b)
    for _ in range(terms):
        k = rng.choice([r for r in range(1, gens + 1) if r % 2 == parity] or [parity])
        if k == 0:
            continue
        bits = rng.sample(range(gens), k)
        mask = sum(1 << b for b in bits)
        c = rng.randint(-height, height)
        if c:
            out[mask] = out.get(mask, 0) + Fraction(c)
    return SuperNumber({k: v for k, v in out.items() if v}, m)


def random_point(rng, coords: CoordinateSystem, m, height=3, positive=False) -> dict:
    """Even coordinates get a nonzero body (positive if asked) plus soul; odd ones pure soul."""
    pt = {}
    for v in coords.even:
        b = rng.randint(1, height) if positive else rng.choice([i for i in range(-height, height + 1) if i])
        pt[v] = random_supernumber(rng, m, 0, height, 2, body=b)
    for v in coords.odd:
        pt[v] = random_supernumber(rng, m, 1, height, 2)
    return pt


def monomials(coords: CoordinateSystem, degree):
    """``(exps, odd_mask)`` keys of coordinate monomials of total degree <= ``degree``."""
    n_even = len(coords.even)
    n_odd = len(coords.odd)
    out = []
    for k_odd in range(0, min(degree, n_odd) + 1):
        for odd in itertools.combinations(range(n_odd), k_odd):
            for exps in itertools.product(range(degree - k_odd + 1), repeat=n_even):
                if sum(exps) + k_odd <= degree:
                    out.append((exps, odd))
    return out


def random_polynomial(rng, coords, m, parity, degree=2, height=5, density=0.5, exclude=()) -> SuperPolynomial:
    """Homogeneous random superpolynomial; coefficients are Grassmann numbers of matching parity."""
    total = SuperPolynomial.zero(coords, m)
    for exps, odd in monomials(coords, degree):
        if rng.random() > density:
            continue
        names = [coords.even[i] for i, e in enumerate(exps) for _ in range(e)] + [coords.odd[i] for i in odd]
        if any(n in exclude for n in names):
            continue
        mono = SuperPolynomial.constant(1, coords, m)
        for n in names:
            mono = mono * SuperPolynomial.variable(n, coords, m)
        coef_parity = (parity + len(odd)) % 2
        c = random_supernumber(rng, m, coef_parity, height, 2)
        if not c.is_zero():
            total = total + SuperPolynomial.constant(c, coords, m) * mono
    return total


# chart building blocks, each with an exact polynomial inverse
def _var(coords, m):
    return {v: SuperPolynomial.variable(v, coords, m) for v in coords.names}


def shear(coords, m, target: str, h: SuperPolynomial, scale=1):
    """``y_target -> scale*y_target + h(other coordinates)``."""
    v = _var(coords, m)
    to = [v[n] * scale + h if n == target else v[n] for n in coords.names]
    back = [(v[n] - h) * (Fraction(1) / Fraction(scale)) if n == target else v[n] for n in coords.names]
    return to, back


def theta_shear(coords, m, g: SuperPolynomial):
    """Darboux: ``th_i -> th_i + dG/dx_i`` for odd ``G(x)``."""
    v = _var(coords, m)
    to = [v[x] for x in coords.even] + [v[t] + g.left_partial(x) for x, t in zip(coords.even, coords.odd)]
    back = [v[x] for x in coords.even] + [v[t] - g.left_partial(x) for x, t in zip(coords.even, coords.odd)]
    return to, back


def x_shear(coords, m, g: SuperPolynomial):
    """Darboux: ``x_i -> x_i + dF/dth_i`` for odd ``F(th)``."""
    v = _var(coords, m)
    to = [v[x] + g.left_partial(t) for x, t in zip(coords.even, coords.odd)] + [v[t] for t in coords.odd]
    back = [v[x] - g.left_partial(t) for x, t in zip(coords.even, coords.odd)] + [v[t] for t in coords.odd]
    return to, back


def linear_symplectic(coords, m, mat):
    """Darboux: ``x' = x A``, ``th' = th A^-T`` for an invertible rational matrix ``A``."""
    from .superlinalg import SuperMatrix

    n = len(coords.even)
    a = SuperMatrix([[Fraction(e) for e in r] for r in mat])
    ainv = a.inverse()
    v = _var(coords, m)

    def comb(names, cols):
        return [sum((v[names[i]] * cols[i][j] for i in range(n)), SuperPolynomial.zero(coords, m)) for j in range(n)]

    at = [[a[i, j] for j in range(n)] for i in range(n)]
    ainv_t = [[ainv[j, i] for j in range(n)] for i in range(n)]
    to = comb(coords.even, at) + comb(coords.odd, ainv_t)
    back = comb(coords.even, [[ainv[i, j] for j in range(n)] for i in range(n)]) + comb(
        coords.odd, [[a[j, i] for j in range(n)] for i in range(n)]
    )
    return to, back


def point_shear(coords, m, i: int, j: int, q: SuperPolynomial):
    """Darboux: ``x_j -> x_j + q(x_i)``, ``th_i -> th_i - q'(x_i) th_j`` (``i != j``)."""
    v = _var(coords, m)
    xi, xj = coords.even[i], coords.even[j]
    ti, tj = coords.odd[i], coords.odd[j]
    dq = q.left_partial(xi)
    to, back = [], []
    for n in coords.names:
        if n == xj:
            to.append(v[n] + q)
            back.append(v[n] - q)
        elif n == ti:
            to.append(v[n] - dq * v[tj])
            back.append(v[n] + dq * v[tj])
        else:
            to.append(v[n])
            back.append(v[n])
    return to, back


def compose(first, second, coords):
    """Polynomial maps as (to, back) lists: apply ``first`` then ``second``."""
    to1, back1 = first
    to2, back2 = second
    to = [p.substitute(dict(zip(coords.names, to1)), coords) for p in to2]
    back = [p.substitute(dict(zip(coords.names, back2)), coords) for p in back1]
    return to, back


def random_darboux_chart(seed, coords: CoordinateSystem, m, steps=3, name=None, degree=2) -> CoordinateChart:
    """Composition of random Darboux building blocks; verified before return by the caller."""
    rng = _rng(seed)
    n = len(coords.even)
    x_only = CoordinateSystem(coords.even, ())
    th_only = CoordinateSystem((), coords.odd)
    acc = [SuperPolynomial.variable(v, coords, m) for v in coords.names]
    acc = (acc, list(acc))
    for _ in range(steps):
        kind = rng.choice(["theta", "x", "linear", "point"] if n > 1 else ["theta", "x", "linear"])
        if kind == "theta":
            g = random_polynomial(rng, x_only, m, 1, degree + 1, height=3, density=0.6)
            step = theta_shear(coords, m, _embed(g, coords))
        elif kind == "x":
            g = random_polynomial(rng, th_only, m, 1, min(degree + 1, n), height=3, density=0.7)
            step = x_shear(coords, m, _embed(g, coords))
        elif kind == "linear":
            step = linear_symplectic(coords, m, _unimodular(rng, n))
        else:
            i, j = rng.sample(range(n), 2)
            q = random_polynomial(rng, CoordinateSystem((coords.even[i],), ()), m, 0, degree, height=3, density=0.8)
            step = point_shear(coords, m, i, j, _embed(q, coords))
        acc = compose(acc, step, coords)
    return CoordinateChart(name or f"darboux{seed}", coords, acc[0], acc[1], darboux=True, m=m)


def random_chart(seed, coords: CoordinateSystem, m, steps=3, name=None, degree=2) -> CoordinateChart:
    """Composition of random single-coordinate shears (generally not Darboux)."""
    rng = _rng(seed)
    acc = [SuperPolynomial.variable(v, coords, m) for v in coords.names]
    acc = (acc, list(acc))
    for _ in range(steps):
        target = rng.choice(coords.names)
        h = random_polynomial(rng, coords, m, coords.parity(target), degree, height=3, density=0.3,
                              exclude=(target,))
        scale = rng.choice([1, 2, -1, Fraction(1, 2)])
        acc = compose(acc, shear(coords, m, target, h, scale), coords)
    return CoordinateChart(name or f"chart{seed}", coords, acc[0], acc[1], darboux=False, m=m)


def _embed(p: SuperPolynomial, coords):
    """Re-express a polynomial over a sub-system in the full coordinate system."""
    mapping = {v: SuperPolynomial.variable(v, coords, p.m) for v in p.coords.names}
    return p.substitute(mapping, coords)


def _unimodular(rng, n):
    """Random integer matrix with determinant +-1 (product of elementary matrices)."""
    a = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(2 * n):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            a = [[-a[0][0]]]
            continue
        c = rng.choice([-2, -1, 1, 2])
        a[i] = [x + c * y for x, y in zip(a[i], a[j])]
    if rng.random() < 0.5:
        a[0] = [2 * x for x in a[0]]
    return a


# the non-polynomial Darboux family of E^{1.1} (and its product with identity)
def reparam_chart(f: SuperPolynomial, beta: SuperPolynomial, coords: CoordinateSystem, index=0, name="reparam"):
    """``x_i' = f(x_i)``, ``th_i' = th_i / f'(x_i) + beta(x_i)``, all other coordinates fixed.

    ``f`` and ``beta`` are polynomials in ``coords.even[index]``; ``1/f'`` is
    expanded as a jet around each point, so the chart is pointwise.
    """
    m = f.m
    x = coords.even[index]
    t = coords.odd[index]

    def jets(point, order):
        images = []
        df = f.left_partial(x).shift(point, order=order + 1)
        inv = df.with_order(order + 1).inverse()
        for v in coords.names:
            var = SuperPolynomial.variable(v, coords, m).shift(point, order=order + 1)
            if v == x:
                images.append(f.shift(point, order=order + 1))
            elif v == t:
                images.append(var * inv + beta.shift(point, order=order + 1))
            else:
                images.append(var)
        return images

    to = None
    if f.left_partial(x).is_constant():
        c = f.left_partial(x).constant_term()
        v = _var(coords, m)
        to = [f if n == x else (v[n] * c.inverse() + beta if n == t else v[n]) for n in coords.names]
        return CoordinateChart(name, coords, to, None, darboux=True, m=m)
    return CoordinateChart(name, coords, None, None, darboux=True, m=m, jets=jets)
