"""Odd symplectic structures, the Buttin bracket, Hamiltonian fields,
divergence with respect to a volume form and the Delta operator.

Sign conventions (fixed once, here):

* ``Omega^{AB} = {z^A, z^B}``; in Darboux coordinates this is the table of
  the canonical bracket ``{f,g} = sum_i df/dx^i dg/dth^i + (-1)^p(f) df/dth^i dg/dx^i``.
* ``Omega_{AB}`` is the matrix inverse, ``Omega^{AC} Omega_{CB} = delta^A_B``,
  which gives ``Omega(d/dx^i, d/dth^j) = -delta_ij``.
* ``Omega(X, Y) = X^A Omega_{AB} Y^B (-1)^(p(Y)p(B) + p(Y))``.  With these
  choices ``Omega(D_f, D_g) = -{f, g}`` for all parities.
"""

from __future__ import annotations

from .errors import DegenerateStructure, ParityViolation, SingularBody, ZeroBody
from .grassmann import DEFAULT_GENERATORS, EVEN, SuperNumber
from .superlinalg import SuperMatrix
from .superpoly import CoordinateSystem, SuperPolynomial, VectorField


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _const(value, coords, m, order=None):
    return SuperPolynomial.constant(value, coords, m, order)


def canonical_upper(coords: CoordinateSystem, m: int) -> SuperMatrix:
    n = len(coords.even)
    par = coords.parities()
    rows = []
    for a in range(2 * n):
        row = []
        for b in range(2 * n):
            v = 0
            if a < n and b == a + n:
                v = 1
            elif a >= n and b == a - n:
                v = -1
            row.append(_const(v, coords, m))
        rows.append(row)
    return SuperMatrix(rows, par, [1 - p for p in par])


class OddSymplecticStructure:
    """Odd symplectic structure given by its bracket matrix ``Omega^{AB}(z)``."""

    def __init__(self, coords: CoordinateSystem, omega_upper: SuperMatrix = None, omega_lower: SuperMatrix = None,
                 m: int = DEFAULT_GENERATORS, canonical: bool = False, validate: bool = True):
        self.coords = coords
        self.m = m
        self.canonical = canonical
        if omega_upper is None and omega_lower is None:
            raise ValueError("need omega_upper or omega_lower")
        self._lower = omega_lower
        if omega_upper is None:
            omega_upper = omega_lower.inverse()
        self.omega_upper = omega_upper
        if validate:
            self.validate()

    @classmethod
    def canonical_structure(cls, n: int, m: int = DEFAULT_GENERATORS) -> "OddSymplecticStructure":
        coords = CoordinateSystem.ambient(n)
        return cls(coords, canonical_upper(coords, m), m=m, canonical=True, validate=False)

    @property
    def n(self) -> int:
        return len(self.coords.even)

    @property
    def omega_lower(self) -> SuperMatrix:
        """Symbolic ``Omega_{AB}`` (needs a constant-plus-nilpotent body)."""
        if self._lower is None:
            self._lower = self.omega_upper.inverse()
        return self._lower

    def upper_at(self, point) -> SuperMatrix:
        return self.omega_upper.map(lambda e: e.evaluate(point))

    def lower_at(self, point) -> SuperMatrix:
        """``Omega_{AB}`` at a Lambda-point, by exact pointwise inversion."""
        if self._lower is not None:
            return self._lower.map(lambda e: e.evaluate(point))
        return self.upper_at(point).inverse()

    def validate(self, closedness: bool = True):
        """Check graded antisymmetry, parity, nondegeneracy and (optionally) Jacobi."""
        par = self.coords.parities()
        dim = len(par)
        up = self.omega_upper
        for a in range(dim):
            for b in range(dim):
                e = up[a, b]
                want = (par[a] + par[b] + 1) % 2
                if not e.is_zero() and e.parity_bit() != want:
                    raise ParityViolation(f"Omega^{{{a}{b}}} has the wrong parity")
                other = up[b, a] * (-_sign((par[a] + 1) * (par[b] + 1)))
                if e != other:
                    raise DegenerateStructure(f"Omega^{{{a}{b}}} violates graded antisymmetry")
        body = [[e.body_polynomial().constant_term().body() for e in r] for r in up.entries]
        try:
            SuperMatrix([[SuperNumber.scalar(x, self.m) for x in r] for r in body]).inverse()
        except SingularBody:
            raise DegenerateStructure("Omega has a degenerate body") from None
        if closedness:
            names = self.coords.names
            vars_ = [SuperPolynomial.variable(v, self.coords, self.m) for v in names]
            for i in range(dim):
                for j in range(i, dim):
                    for k in range(j, dim):
                        r = self.jacobi_residual(vars_[i], vars_[j], vars_[k])
                        if not r.is_zero():
                            raise DegenerateStructure(
                                f"Jacobi identity fails on ({names[i]}, {names[j]}, {names[k]}): residual {r}"
                            )

    # the bracket
    def bracket(self, f: SuperPolynomial, g: SuperPolynomial) -> SuperPolynomial:
        """Buttin bracket ``{f, g}``; ``f`` must have a definite parity."""
        pf = f.parity_bit()
        if self.canonical:
            return self._canonical_bracket(f, g, pf)
        par = self.coords.parities()
        names = self.coords.names
        df = [f.left_partial(v) for v in names]
        dg = [g.left_partial(v) for v in names]
        order = _min_order(f, g)
        total = SuperPolynomial.zero(f.coords, self.m, order)
        for a, pa in enumerate(par):
            if df[a].is_zero():
                continue
            left = df[a] * _sign(pf * pa + pa)
            for b in range(len(par)):
                w = self.omega_upper[a, b]
                if w.is_zero() or dg[b].is_zero():
                    continue
                total = total + left * w.with_order(order) * dg[b]
        return total

    def _canonical_bracket(self, f, g, pf):
        sign = _sign(pf)
        order = _min_order(f, g)
        total = SuperPolynomial.zero(f.coords, self.m, order)
        for x, th in zip(self.coords.even, self.coords.odd):
            fx, gth = f.left_partial(x), g.left_partial(th)
            if not fx.is_zero() and not gth.is_zero():
                total = total + fx * gth
            fth, gx = f.left_partial(th), g.left_partial(x)
            if not fth.is_zero() and not gx.is_zero():
                total = total + fth * gx * sign
        return total

    def jacobi_residual(self, f, g, h) -> SuperPolynomial:
        """Signed cyclic sum of the Jacobi identity; zero for a closed form."""
        pf, pg, ph = f.parity_bit(), g.parity_bit(), h.parity_bit()
        b = self.bracket
        return (
            b(f, b(g, h)) * _sign((pf + 1) * (ph + 1))
            + b(g, b(h, f)) * _sign((pg + 1) * (pf + 1))
            + b(h, b(f, g)) * _sign((ph + 1) * (pg + 1))
        )

    def hamiltonian_field(self, f: SuperPolynomial) -> VectorField:
        """``D_f = {f, z^A} d/dz^A``, a field of parity ``p(f) + 1``."""
        comps = [self.bracket(f, SuperPolynomial.variable(v, f.coords, self.m, f.order)) for v in self.coords.names]
        return VectorField(comps, self.coords, (f.parity_bit() + 1) % 2)

    # bilinear form on tangent vectors at a point
    def form(self, x: list, y: list, py: int, lower: SuperMatrix) -> SuperNumber:
        """``Omega(X, Y)`` for component lists; ``py`` is the parity of ``Y``."""
        par = self.coords.parities()
        total = None
        for a, xa in enumerate(x):
            if xa.is_zero():
                continue
            for b, yb in enumerate(y):
                w = lower[a, b]
                if yb.is_zero() or w.is_zero():
                    continue
                term = xa * w * yb * _sign(py * par[b] + py)
                total = term if total is None else total + term
        if total is None:
            sample = x[0]
            return sample * 0
        return total


def _min_order(f, g):
    orders = [o for o in (f.order, g.order) if o is not None]
    return min(orders) if orders else None


class VolumeForm:
    """``dv = rho(z) dz^1 ... dz^2n`` with an even density of invertible body."""

    def __init__(self, rho: SuperPolynomial):
        if rho.parity() != EVEN:
            raise ParityViolation("the volume density must be even")
        self.rho = rho

    @classmethod
    def trivial(cls, coords, m=DEFAULT_GENERATORS):
        return cls(_const(1, coords, m))

    def log_gradient(self) -> list:
        """Symbolic ``rho^-1 d_A rho``; needs ``rho`` to be constant plus nilpotent."""
        inv = self.rho.inverse()
        return [self.rho.left_partial(v) * inv for v in self.rho.coords.names]

    def log_gradient_at(self, point) -> list:
        r = self.rho.evaluate(point)
        if r.body() == 0:
            raise ZeroBody("volume density vanishes at the point")
        inv = r.inverse()
        return [self.rho.left_partial(v).evaluate(point) * inv for v in self.rho.coords.names]

    def log_gradient_jet(self, point, order: int) -> list:
        """Jets of ``d_A log rho`` around ``point`` in the displacement variables."""
        shifted = self.rho.shift(point, order=order + 1)
        inv = shifted.with_order(order).inverse()
        return [shifted.left_partial(v) * inv for v in self.rho.coords.names]


def divergence(x: VectorField, dv: VolumeForm) -> SuperPolynomial:
    """``sum_A d_A X^A (-1)^(p(X)p(A)+p(A)) + X^A d_A log rho`` (symbolic)."""
    par = x.coords.parities()
    total = SuperPolynomial.zero(x.coords, dv.rho.m)
    for name, comp, pa in zip(x.coords.names, x.components, par):
        total = total + comp.left_partial(name) * _sign(x.parity * pa + pa)
    for comp, lg in zip(x.components, dv.log_gradient()):
        total = total + comp * lg
    return total


def divergence_at(x: VectorField, dv: VolumeForm, point) -> SuperNumber:
    """Exact pointwise divergence; works for any ``rho`` with invertible body at the point."""
    par = x.coords.parities()
    total = SuperNumber.scalar(0, dv.rho.m)
    for name, comp, pa in zip(x.coords.names, x.components, par):
        total = total + comp.left_partial(name).evaluate(point) * _sign(x.parity * pa + pa)
    for comp, lg in zip(x.components, dv.log_gradient_at(point)):
        total = total + comp.evaluate(point) * lg
    return total


def delta_operator(f: SuperPolynomial, s: OddSymplecticStructure, dv: VolumeForm) -> SuperPolynomial:
    """``Delta f = div_dv D_f``."""
    return divergence(s.hamiltonian_field(f), dv)


def delta_at(f: SuperPolynomial, s: OddSymplecticStructure, dv: VolumeForm, point) -> SuperNumber:
    return divergence_at(s.hamiltonian_field(f), dv, point)

