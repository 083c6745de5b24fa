"""Coordinate charts, local coordinate changes around a Lambda-point, and the
chart-relative objects d(L,X), Gamma(L,X) and D_can.

Everything chart-relative is computed at a point from jets: a
:class:`LocalMap` holds the new coordinates ``w^K(p + h)`` as truncated
polynomials in the displacement ``h``.  That covers polynomial charts and
transitions such as ``th' = th / f'(x) + beta(x)`` whose inverse is not
polynomial.  Matrices follow the row-input / column-output convention of
:mod:`oddsym.superlinalg`; ``J[A][K] = d w^K / d z^A`` and ``N = J^-1`` holds
``d z^A / d w^K`` at ``N[K][A]``.
"""

from __future__ import annotations

from .errors import NotDarboux, PairValidationError, ParityViolation, SingularBody
from .grassmann import SuperNumber
from .superlinalg import SuperMatrix, apply
from .superpoly import CoordinateSystem, LambdaPoint, SuperPolynomial, VectorField
from .symplectic import OddSymplecticStructure

JET_ORDER = 2


def _sign(k):
    return -1 if k % 2 else 1


def _zero(m):
    return SuperNumber.scalar(0, m)


def _values(point):
    return point.values if isinstance(point, LambdaPoint) else dict(point)


class LocalMap:
    """A coordinate change near ``point``: ``images[K] = w^K(point + h)`` as jets in ``h``."""

    def __init__(self, source: CoordinateSystem, target: CoordinateSystem, point, images, m, order=JET_ORDER):
        if len(images) != target.dim or source.dim != target.dim:
            raise ValueError("a coordinate change needs as many images as coordinates")
        self.source = source
        self.target = target
        self.point = _values(point)
        self.m = m
        self.order = order
        self.images = [img.with_order(order) for img in images]
        for name, img in zip(target.names, self.images):
            want = target.parity(name)
            if not img.is_zero() and img.parity_bit() != want:
                raise ParityViolation(f"image of {name} has the wrong parity")
        self._jac = None
        self._inv = None
        self._inverse_map = None

    @classmethod
    def from_polynomials(cls, polys, source, target, point, m, order=JET_ORDER):
        return cls(source, target, point, [p.shift(point, order=order) for p in polys], m, order)

    @classmethod
    def identity(cls, coords, point, m, order=JET_ORDER):
        return cls.from_polynomials([SuperPolynomial.variable(v, coords, m) for v in coords.names],
                                    coords, coords, point, m, order)

    def target_point(self) -> dict:
        return {name: img.constant_term() for name, img in zip(self.target.names, self.images)}

    def jacobian(self) -> SuperMatrix:
        if self._jac is None:
            par = self.source.parities()
            rows = [[img.left_partial(a).constant_term() for img in self.images] for a in self.source.names]
            self._jac = SuperMatrix(rows, par, self.target.parities())
        return self._jac

    def inverse_jacobian(self) -> SuperMatrix:
        if self._inv is None:
            self._inv = self.jacobian().inverse()
        return self._inv

    def jacobian_jet(self) -> SuperMatrix:
        rows = [[img.left_partial(a) for img in self.images] for a in self.source.names]
        return SuperMatrix(rows, self.source.parities(), self.target.parities())

    def second(self) -> list:
        """``S[Q][B][K] = d_Q d_B w^K`` at the point."""
        out = []
        for q in self.source.names:
            rows = []
            for b in self.source.names:
                rows.append([img.left_partial(b).left_partial(q).constant_term() for img in self.images])
            out.append(rows)
        return out

    def inverse(self) -> "LocalMap":
        """Jets of the old coordinates as functions of the new displacement."""
        if self._inverse_map is None:
            self._inverse_map = self._compute_inverse()
        return self._inverse_map

    def _compute_inverse(self) -> "LocalMap":
        order = self.order
        k_vars = [SuperPolynomial.variable(v, self.target, self.m, order) for v in self.target.names]
        n_mat = self.inverse_jacobian()
        const = [img.constant_term() for img in self.images]

        def times_n(vec):
            out = []
            for a in range(self.source.dim):
                acc = SuperPolynomial.zero(self.target, self.m, order)
                for kk, v in enumerate(vec):
                    c = n_mat[kk, a]
                    if not c.is_zero() and not v.is_zero():
                        acc = acc + v * c
                out.append(acc)
            return out

        h = times_n(k_vars)
        for _ in range(order):
            mapping = dict(zip(self.source.names, h))
            residual = []
            for img, c, k in zip(self.images, const, k_vars):
                residual.append(img.substitute(mapping, self.target, order=order) - c - k)
            corr = times_n(residual)
            h = [a - b for a, b in zip(h, corr)]
        images = [hh + SuperPolynomial.constant(self.point[name], self.target, self.m, order)
                  for hh, name in zip(h, self.source.names)]
        return LocalMap(self.target, self.source, self.target_point(), images, self.m, order)

    def then(self, other: "LocalMap") -> "LocalMap":
        """Composition: first this map, then ``other`` (defined at this map's image point)."""
        if other.source != self.target:
            raise ValueError("maps do not compose")
        tp = self.target_point()
        mapping = {}
        for name, img in zip(self.target.names, self.images):
            mapping[name] = img - SuperPolynomial.constant(tp[name], self.source, self.m)
        images = [img.substitute(mapping, self.source, order=self.order) for img in other.images]
        return LocalMap(self.source, other.target, self.point, images, self.m, min(self.order, other.order))

    # transporting objects
    def push_vector(self, x: list) -> list:
        """Components ``X^Q d w^K / d z^Q`` of a tangent vector at the point."""
        return apply(self.jacobian(), x)

    def push_operator(self, op: SuperMatrix) -> SuperMatrix:
        """``N . L . J``: the same linear operator in the new coordinates."""
        return self.inverse_jacobian() @ op @ self.jacobian()

    def push_field(self, field: "LocalField") -> "LocalField":
        """A vector field jet expressed in the new coordinates and displacement."""
        jac = self.jacobian_jet()
        comps = []
        for kk in range(self.target.dim):
            acc = SuperPolynomial.zero(self.source, self.m, field.order)
            for q, xq in enumerate(field.components):
                if not xq.is_zero():
                    acc = acc + xq * jac[q, kk]
            comps.append(acc)
        inv = self.inverse()
        mapping = {}
        for name, img in zip(self.source.names, inv.images):
            mapping[name] = img - SuperPolynomial.constant(self.point[name], self.target, self.m)
        comps = [c.substitute(mapping, self.target, order=field.order) for c in comps]
        return LocalField(self.target, self.target_point(), comps, field.parity, self.m, field.order)


class LocalField:
    """Jets ``X^A(p + h)`` of a vector field around a point."""

    def __init__(self, coords, point, components, parity, m, order=JET_ORDER - 1):
        self.coords = coords
        self.point = _values(point)
        self.components = [c.with_order(order) for c in components]
        self.parity = parity
        self.m = m
        self.order = order

    @classmethod
    def from_field(cls, field: VectorField, point, m, order=JET_ORDER - 1):
        comps = [c.shift(point, order=order) for c in field.components]
        return cls(field.coords, point, comps, field.parity, m, order)

    def value(self) -> list:
        return [c.constant_term() for c in self.components]

    def derivative(self) -> list:
        """``D[B][A] = d_B X^A`` at the point."""
        return [[c.left_partial(b).constant_term() for c in self.components] for b in self.coords.names]


class CoordinateChart:
    """A chart over a base coordinate system.

    ``to`` gives the chart coordinates as polynomials in the base ones,
    ``from_`` (optional) the inverse.  ``jets`` can replace ``to`` by a
    callable ``(point, order) -> list of jets`` for non-polynomial charts.
    """

    def __init__(self, name, base: CoordinateSystem, to=None, from_=None, darboux=False, m=None, jets=None,
                 coords: CoordinateSystem = None):
        self.name = name
        self.base = base
        self.coords = coords or base
        self.to = list(to) if to is not None else None
        self.from_ = list(from_) if from_ is not None else None
        self.darboux = darboux
        self._jets = jets
        if m is None:
            m = (self.to or self.from_)[0].m if (self.to or self.from_) else 6
        self.m = m
        if self.to is None and jets is None:
            raise ValueError("a chart needs polynomial images or a jet builder")

    def local_map(self, point, order=JET_ORDER) -> LocalMap:
        if self._jets is not None:
            return LocalMap(self.base, self.coords, point, self._jets(_values(point), order), self.m, order)
        return LocalMap.from_polynomials(self.to, self.base, self.coords, point, self.m, order)

    def check_inverse(self) -> bool:
        """``to`` composed with ``from_`` is the identity (exact polynomial check)."""
        if self.to is None or self.from_ is None:
            return True
        mapping = dict(zip(self.base.names, self.from_))
        for name, img in zip(self.coords.names, self.to):
            if img.substitute(mapping, self.coords) != SuperPolynomial.variable(name, self.coords, self.m):
                return False
        return True

    def bracket_table(self, s: OddSymplecticStructure):
        """``{w^A, w^B}`` computed in base coordinates."""
        return [[s.bracket(a, b) for b in self.to] for a in self.to]

    def darboux_failures(self, s: OddSymplecticStructure, points=()) -> list:
        """Pairs ``(A, B)`` whose bracket differs from the canonical table."""
        n = len(self.coords.even)
        failures = []

        def expected(a, b):
            if a < n and b == a + n:
                return 1
            if a >= n and b == a - n:
                return -1
            return 0

        if self.to is not None:
            table = self.bracket_table(s)
            for a in range(2 * n):
                for b in range(2 * n):
                    if table[a][b] != expected(a, b):
                        failures.append((self.coords.names[a], self.coords.names[b]))
            return failures
        for pt in points:
            jets = self._jets(_values(pt), JET_ORDER)
            for a in range(2 * n):
                for b in range(2 * n):
                    val = s.bracket(jets[a], jets[b]).constant_term()
                    if val != expected(a, b):
                        failures.append((self.coords.names[a], self.coords.names[b]))
        return failures

    def verify_darboux(self, s: OddSymplecticStructure, points=()):
        bad = self.darboux_failures(s, points)
        if bad:
            raise NotDarboux(f"chart {self.name} fails the Darboux bracket table at {bad}")


def transition(z: CoordinateChart, w: CoordinateChart, base_point, order=JET_ORDER) -> LocalMap:
    """The change ``z -> w`` near the point, both charts given over the same base."""
    return z.local_map(base_point, order).inverse().then(w.local_map(base_point, order))


# the chart-relative operators
def partial_lx(op: SuperMatrix, field: LocalField) -> SuperNumber:
    """``d_B X^A L^B_A (-1)^(p(X)p(B)+p(B))`` in the field's own coordinates."""
    par = field.coords.parities()
    der = field.derivative()
    total = _zero(field.m)
    for b, pb in enumerate(par):
        s = _sign(field.parity * pb + pb)
        for a in range(len(par)):
            d, lab = der[b][a], op[a, b]
            if not d.is_zero() and not lab.is_zero():
                total = total + d * lab * s
    return total


def gamma(op: SuperMatrix, x: list, z_to_w: LocalMap) -> SuperNumber:
    """``X^Q d_Q d_B w^K (dz^A/dw^K) L^B_A (-1)^p(B)`` at the point (values only)."""
    par = z_to_w.source.parities()
    sec = z_to_w.second()
    n_mat = z_to_w.inverse_jacobian()
    dim = len(par)
    # C[B][A] = sum_K S[Q][B][K] N[K][A] contracted with X^Q
    total = _zero(z_to_w.m)
    for q in range(dim):
        xq = x[q]
        if xq.is_zero():
            continue
        for b in range(dim):
            row = sec[q][b]
            for a in range(dim):
                lab = op[a, b]
                if lab.is_zero():
                    continue
                acc = None
                for k in range(dim):
                    if row[k].is_zero() or n_mat[k, a].is_zero():
                        continue
                    t = row[k] * n_mat[k, a]
                    acc = t if acc is None else acc + t
                if acc is not None:
                    total = total + xq * acc * lab * _sign(par[b])
    return total


def gamma_by_definition(op: SuperMatrix, field: LocalField, z_to_w: LocalMap) -> SuperNumber:
    """``d(L,X)^{w} - d(L,X)^{z}``, transporting the pair into ``w``."""
    pushed = z_to_w.push_field(field)
    return partial_lx(z_to_w.push_operator(op), pushed) - partial_lx(op, field)


def d_can(pair: "OddNormalPair", z_to_w: LocalMap) -> SuperNumber:
    """``d(Pi, Psi)^{z} + Gamma(Pi, Psi)^{w}_{z}`` with ``w`` Darboux."""
    return partial_lx(pair.projector, pair.psi) + gamma(pair.projector, pair.psi.value(), z_to_w)


class OddNormalPair:
    """A projector value ``Pi`` and a jet of the odd field ``Psi`` at one point."""

    def __init__(self, projector: SuperMatrix, psi: LocalField):
        self.projector = projector
        self.psi = psi

    @property
    def coords(self):
        return self.psi.coords

    def transported(self, lm: LocalMap) -> "OddNormalPair":
        return OddNormalPair(lm.push_operator(self.projector), lm.push_field(self.psi))

    def validate(self, lower: SuperMatrix, s: OddSymplecticStructure):
        """Projector, membership, isotropy, rank (1|1), non-nilpotency and a partner ``H``."""
        psi = self.psi.value()
        pi = self.projector
        problems = []
        if pi @ pi != pi:
            problems.append("Pi is not idempotent")
        if apply(pi, psi) != psi:
            problems.append("Psi is not in the image of Pi")
        if not s.form(psi, psi, 1, lower).is_zero():
            problems.append("Omega(Psi, Psi) != 0")
        n = len(self.coords.even)
        if all(c.body() == 0 for c in psi[n:]):
            problems.append("Psi is nilpotent")
        ranks = body_ranks(pi)
        if ranks != (1, 1):
            problems.append(f"image of Pi has body rank {ranks}, expected (1, 1)")
        if not problems and find_partner(pi, psi, lower, s) is None:
            problems.append("no even H in the plane with Omega(H, Psi) invertible")
        if problems:
            raise PairValidationError("; ".join(problems))


def body_ranks(mat: SuperMatrix):
    """Ranks of the even and odd diagonal blocks of the body."""
    from fractions import Fraction

    def rank(rows):
        rows = [list(r) for r in rows]
        r = 0
        ncols = len(rows[0]) if rows else 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = Fraction(rows[i][c]) / rows[r][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            r += 1
        return r

    ev = [i for i, p in enumerate(mat.row_parities) if p == 0]
    od = [i for i, p in enumerate(mat.row_parities) if p == 1]
    b = [[x.body() for x in row] for row in mat.entries]
    return rank([[b[i][j] for j in ev] for i in ev]), rank([[b[i][j] for j in od] for i in od])


def find_partner(pi: SuperMatrix, psi: list, lower: SuperMatrix, s: OddSymplecticStructure):
    """An even ``H`` in the image of ``Pi`` with ``Omega(H, Psi) = 1``, or ``None``."""
    n = len(s.coords.even)
    for j in range(n):
        h1 = pi.row(j)
        c = s.form(h1, psi, 1, lower)
        if c.body() != 0:
            inv = c.inverse()
            return [inv * x for x in h1]
    return None


def plane_projector(h: list, psi: list, lower: SuperMatrix, s: OddSymplecticStructure) -> SuperMatrix:
    """Symplectoorthogonal projector onto span(H, Psi), given ``Omega(H, Psi) = 1``.

    ``Pi(X) = Omega(X, Psi) H - Omega(X, H) Psi``.
    """
    par = s.coords.parities()
    rows = []
    for a, pa in enumerate(par):
        e = [SuperNumber.scalar(1 if b == a else 0, s.m) for b in range(len(par))]
        c1 = s.form(e, psi, 1, lower)
        c2 = s.form(e, h, 0, lower)
        rows.append([c1 * hb - c2 * pb for hb, pb in zip(h, psi)])
    return SuperMatrix(rows, par, par)


def level_set_pair(f: SuperPolynomial, phi: SuperPolynomial, s: OddSymplecticStructure, point,
                   order=JET_ORDER - 1):
    """Odd normal pair spanned by ``D_f`` and ``D_phi`` (valid off the surface too)."""
    pt = _values(point)
    fj = f.shift(pt, order=order + 2)
    pj = phi.shift(pt, order=order + 2)
    psi = level_set_psi_jet(fj, pj, s, order)
    lower = s.lower_at(pt)
    psi_val = psi.value()
    d_phi = [c.constant_term() for c in s.hamiltonian_field(pj).components]
    c = s.form(d_phi, psi_val, 1, lower)
    if c.body() == 0:
        raise SingularBody("Omega(D_phi, Psi) is not invertible")
    h = [c.inverse() * x for x in d_phi]
    pi = plane_projector(h, psi_val, lower, s)
    local = LocalField(s.coords, pt, psi.components, 1, s.m, order)
    return OddNormalPair(pi, local), h


def level_set_psi_jet(fj, pj, s, order) -> LocalField:
    """``Psi = D_f + {f,f}/(2{f,phi}) D_phi``, the isotropic combination for this bracket's signs."""
    ff = s.bracket(fj, fj)
    fphi = s.bracket(fj, pj)
    coef = ff * (fphi * 2).inverse()
    d_f = s.hamiltonian_field(fj).components
    d_phi = s.hamiltonian_field(pj).components
    comps = [(a + coef * b).with_order(order) for a, b in zip(d_f, d_phi)]
    return LocalField(s.coords, {}, comps, 1, s.m, order)


__all__ = [
    "CoordinateChart",
    "LocalField",
    "LocalMap",
    "OddNormalPair",
    "d_can",
    "gamma",
    "gamma_by_definition",
    "level_set_pair",
    "partial_lx",
    "plane_projector",
    "transition",
]
