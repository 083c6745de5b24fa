"""Embedded (n-1.n-1) supersurfaces: induced form, projectors, the normal odd
field, truncated divergence, the normalized vector-valued semidensity and the
odd semidensity ``A``, plus the level-set formula ``A~``.

All surface quantities are computed at a parameter Lambda-point from jets of
the embedding ``z(zeta)`` (order 2 is all that is ever needed), so embeddings
given implicitly by ``f = phi = 0`` are handled exactly like polynomial ones.
Frames are lists of row vectors: ``e_1..e_{n-1}`` (even) then ``f_1..f_{n-1}`` (odd).
"""

from __future__ import annotations

from dataclasses import dataclass

from .charts import LocalField, LocalMap, OddNormalPair, d_can
from .errors import DegenerateInducedForm, InconsistentConstant, OffSurface, SingularBody, ZeroBody
from .grassmann import SuperNumber, Surd
from .superlinalg import SuperMatrix, apply
from .superpoly import CoordinateSystem, SuperPolynomial
from .symplectic import OddSymplecticStructure, VolumeForm, divergence_at

EMBED_ORDER = 2


def _sign(k):
    return -1 if k % 2 else 1


def _zero(m):
    return SuperNumber.scalar(0, m)


def _unit(v, m):
    return SuperNumber.scalar(v, m)


class Supersurface:
    """A local parametrization ``z^A(zeta)`` of an (n-1.n-1) supersurface.

    Either ``embedding`` (polynomials in the parameters) or ``jets`` (a callable
    ``(parameter point, order) -> jets of z^A in the displacement``) is given.
    """

    def __init__(self, ambient: CoordinateSystem, params: CoordinateSystem = None, embedding=None, jets=None, m=6):
        n = len(ambient.even)
        self.ambient = ambient
        self.params = params or CoordinateSystem.parameters(n - 1)
        self.m = m
        self.embedding = list(embedding) if embedding is not None else None
        self._jets = jets
        if self.embedding is not None:
            if len(self.embedding) != ambient.dim:
                raise ValueError("embedding needs one component per ambient coordinate")
            for name, comp in zip(ambient.names, self.embedding):
                if not comp.is_zero() and comp.parity_bit() != ambient.parity(name):
                    from .errors import ParityViolation

                    raise ParityViolation(f"embedding component {name} has the wrong parity")

    @property
    def n(self):
        return len(self.ambient.even)

    @classmethod
    def graph(cls, ambient, q: SuperPolynomial, r: SuperPolynomial, m=6):
        """``x^i = xi^i, th^i = nu^i (i < n)``, ``x^n = q(zeta)``, ``th^n = r(zeta)``."""
        n = len(ambient.even)
        params = CoordinateSystem.parameters(n - 1)
        comps = [SuperPolynomial.variable(v, params, m) for v in params.even] + [q]
        comps += [SuperPolynomial.variable(v, params, m) for v in params.odd] + [r]
        return cls(ambient, params, comps, m=m)

    def jets(self, q, order=EMBED_ORDER) -> list:
        if self._jets is not None:
            return self._jets(dict(q), order)
        return [c.shift(dict(q), order=order) for c in self.embedding]

    def point(self, q) -> dict:
        return {name: j.constant_term() for name, j in zip(self.ambient.names, self.jets(q, 0))}

    def reparametrize(self, new_of_old_params: list, new_params: CoordinateSystem = None) -> "Supersurface":
        """Substitute ``zeta = zeta(zeta~)``; ``new_of_old_params`` lists ``zeta^alpha`` in terms of ``zeta~``."""
        new_params = new_params or self.params
        mapping = dict(zip(self.params.names, new_of_old_params))
        if self.embedding is not None:
            return Supersurface(self.ambient, new_params, [c.substitute(mapping, new_params) for c in self.embedding],
                                m=self.m)
        old = self

        def jets(q, order):
            base = {name: p.evaluate(q) for name, p in mapping.items()}
            disp = {name: p.shift(q, order=order) - SuperPolynomial.constant(base[name], new_params, old.m)
                    for name, p in mapping.items()}
            return [j.substitute(disp, new_params, order=order) for j in old.jets(base, order)]

        return Supersurface(self.ambient, new_params, jets=jets, m=self.m)

    def parameter_image(self, new_of_old_params, q_new) -> dict:
        return {name: p.evaluate(q_new) for name, p in zip(self.params.names, new_of_old_params)}


@dataclass
class LevelSetSurface:
    """The locus ``f = 0, phi = 0`` with ``f`` even and ``phi`` odd."""

    f: SuperPolynomial
    phi: SuperPolynomial

    def __post_init__(self):
        if not self.f.is_zero() and self.f.parity_bit() != 0:
            from .errors import ParityViolation

            raise ParityViolation("f must be even")
        if not self.phi.is_zero() and self.phi.parity_bit() != 1:
            from .errors import ParityViolation

            raise ParityViolation("phi must be odd")

    @property
    def coords(self):
        return self.f.coords

    def check_on(self, point):
        fv, pv = self.f.evaluate(point), self.phi.evaluate(point)
        if not fv.is_zero() or not pv.is_zero():
            raise OffSurface(f"point is off the surface: f = {fv}, phi = {pv}")

    def solve_point(self, partial: dict, guess: dict, steps=None) -> dict:
        """Solve ``f = phi = 0`` for ``(x^n, th^n)`` given the other coordinates.

        ``guess`` must hold the exact body of ``x^n`` (the body root); the
        soul is then found by Newton iteration, which terminates by nilpotency.
        """
        c = self.coords
        xn, tn = c.even[-1], c.odd[-1]
        pt = dict(partial)
        pt[xn] = SuperNumber.scalar(guess[xn].body() if isinstance(guess[xn], SuperNumber) else guess[xn],
                                    self.f.m)
        pt[tn] = _zero(self.f.m)
        for _ in range(steps or self.f.m + 2):
            fv, pv = self.f.evaluate(pt), self.phi.evaluate(pt)
            if fv.is_zero() and pv.is_zero():
                return pt
            jac = SuperMatrix([[self.f.left_partial(xn).evaluate(pt), self.phi.left_partial(xn).evaluate(pt)],
                               [self.f.left_partial(tn).evaluate(pt), self.phi.left_partial(tn).evaluate(pt)]],
                              [0, 1], [0, 1])
            delta = apply(jac.inverse(), [-fv, -pv])
            pt[xn] = pt[xn] + delta[0]
            pt[tn] = pt[tn] + delta[1]
        self.check_on(pt)
        return pt

    def anchored(self, point) -> Supersurface:
        """Implicit parametrization through a point known to lie on the surface."""
        self.check_on(point)
        c = self.coords
        n = len(c.even)
        params = CoordinateSystem.parameters(n - 1)
        lvl = self
        anchor = dict(point)

        def jets(q, order):
            base = {}
            for i in range(n - 1):
                base[c.even[i]] = q[params.even[i]]
                base[c.odd[i]] = q[params.odd[i]]
            if all(base[k] == anchor[k] for k in base):
                pt = anchor
            else:
                pt = lvl.solve_point(base, anchor)
            return lvl._implicit_jets(pt, params, order)

        return Supersurface(c, params, jets=jets, m=self.f.m)

    def parameter_point(self, point) -> dict:
        c = self.coords
        n = len(c.even)
        params = CoordinateSystem.parameters(n - 1)
        q = {params.even[i]: point[c.even[i]] for i in range(n - 1)}
        q.update({params.odd[i]: point[c.odd[i]] for i in range(n - 1)})
        return q

    def _implicit_jets(self, pt, params, order):
        """Jets of ``z(zeta)`` for the graph parametrization, by Newton iteration on jets."""
        c = self.coords
        m = self.f.m
        n = len(c.even)
        xn, tn = c.even[-1], c.odd[-1]
        known = {}
        for i in range(n - 1):
            for amb, par in ((c.even[i], params.even[i]), (c.odd[i], params.odd[i])):
                known[amb] = SuperPolynomial.constant(pt[amb], params, m, order) + \
                    SuperPolynomial.variable(par, params, m, order)
        ux = SuperPolynomial.constant(pt[xn], params, m, order)
        ut = SuperPolynomial.constant(pt[tn], params, m, order)
        derivs = [[self.f.left_partial(xn), self.phi.left_partial(xn)],
                  [self.f.left_partial(tn), self.phi.left_partial(tn)]]
        for _ in range(order + 1):
            mapping = dict(known)
            mapping[xn], mapping[tn] = ux, ut
            fv = self.f.substitute(mapping, params, order=order)
            pv = self.phi.substitute(mapping, params, order=order)
            jac = SuperMatrix([[d.substitute(mapping, params, order=order) for d in row] for row in derivs],
                              [0, 1], [0, 1])
            delta = apply(jac.inverse(), [-fv, -pv])
            ux, ut = ux + delta[0], ut + delta[1]
        out = []
        for name in c.names:
            out.append(ux if name == xn else ut if name == tn else known[name])
        return out


class SurfacePoint:
    """All first- and second-order data of a supersurface at one parameter point.

    ``chart`` is a Darboux chart over the structure's base coordinates; the
    identity is used when the structure is canonical and no chart is given.
    """

    def __init__(self, surface: Supersurface, s: OddSymplecticStructure, dv: VolumeForm, q, chart=None,
                 frame=None):
        self.surface = surface
        self.s = s
        self.dv = dv
        self.q = dict(q)
        self.m = s.m
        amb = surface.ambient
        self.par = amb.parities()
        self.zpar = surface.params.parities()
        jets = surface.jets(self.q, EMBED_ORDER)
        self.point = {name: j.constant_term() for name, j in zip(amb.names, jets)}
        self._zjets = jets
        self.frame = frame if frame is not None else self.coordinate_frame()
        self.lower = s.lower_at(self.point)
        self.chart = chart
        self._local = None

    # first order data
    def coordinate_frame(self) -> list:
        return [[j.left_partial(a).constant_term() for j in self._zjets] for a in self.surface.params.names]

    def induced_lower(self) -> SuperMatrix:
        rows = [[self.s.form(ea, eb, pb, self.lower) for eb, pb in zip(self.frame, self.zpar)] for ea in self.frame]
        return SuperMatrix(rows, self.zpar, [1 - p for p in self.zpar])

    def induced_upper(self) -> SuperMatrix:
        low = self.induced_lower()
        try:
            return low.inverse()
        except SingularBody:
            raise DegenerateInducedForm("induced form has a degenerate body") from None

    def projectors(self):
        """``(P, Pi)`` with ``P[A][B] = Omega_AK e_a^K (-1)^s(K,a) Omega^ab e_b^B``."""
        up = self.induced_upper()
        dim = len(self.par)
        k = len(self.zpar)
        # T[A][a] = Omega_AK e_a^K (-1)^s(K,a)
        t = []
        for a_ in range(dim):
            row = []
            for al in range(k):
                acc = _zero(self.m)
                for kk in range(dim):
                    w, e = self.lower[a_, kk], self.frame[al][kk]
                    if not w.is_zero() and not e.is_zero():
                        acc = acc + w * e * _sign(self.par[kk] * self.zpar[al] + self.zpar[al])
                row.append(acc)
            t.append(row)
        p_rows = []
        for a_ in range(dim):
            row = []
            for b in range(dim):
                acc = _zero(self.m)
                for al in range(k):
                    if t[a_][al].is_zero():
                        continue
                    for be in range(k):
                        u, e = up[al, be], self.frame[be][b]
                        if not u.is_zero() and not e.is_zero():
                            acc = acc + t[a_][al] * u * e
                row.append(acc)
            p_rows.append(row)
        p = SuperMatrix(p_rows, self.par, self.par)
        return p, SuperMatrix.identity(self.par, _unit(0, self.m)) - p

    def plane_basis(self):
        """A basis ``(H0, Psi0)`` of the normal plane with ``Omega(H0, Psi0) = 1`` and ``Omega(Psi0, Psi0) = 0``."""
        _, pi = self.projectors()
        n = self.surface.n
        v = None
        for i in range(n):
            row = pi.row(n + i)
            if any(x.body() != 0 for x in row[n:]):
                v = row
                break
        if v is None:
            raise DegenerateInducedForm("normal plane has no non-nilpotent odd direction")
        h1 = None
        for j in range(n):
            row = pi.row(j)
            c = self.s.form(row, v, 1, self.lower)
            if c.body() != 0:
                h1, cval = row, c
                break
        if h1 is None:
            raise DegenerateInducedForm("normal plane is degenerate")
        cinv = cval.inverse()
        alpha = self.s.form(v, v, 1, self.lower) * cinv * SuperNumber.scalar(-1, self.m) * SuperNumber.scalar(
            _half(), self.m)
        psi0 = [a + alpha * b for a, b in zip(v, h1)]
        h0 = [cinv * b for b in h1]
        return h0, psi0

    def volume_of(self, even_extra, odd_extra) -> SuperNumber:
        """``rho(z) Ber`` of the rows ``(e..., even_extra; f..., odd_extra)``."""
        n = self.surface.n
        rows = self.frame[: n - 1] + [even_extra] + self.frame[n - 1:] + [odd_extra]
        mat = SuperMatrix(rows, [0] * n + [1] * n, self.par)
        return self.dv.rho.evaluate(self.point) * mat.berezinian()

    def normalization(self, orient=None):
        """``(t, H0, Psi0)`` such that ``Psi = t Psi0`` and ``H = H0 / t`` satisfy ``|dv(e, H; f, Psi)| = 1``.

        The sign of ``Psi`` is fixed by ``orient`` (any odd isotropic vector of
        the normal plane): ``Psi`` is a positive-body multiple of it.
        """
        h0, psi0 = self.plane_basis()
        if orient is not None:
            lam = _proportionality(psi0, orient)
            if lam.body() < 0:
                h0 = [-x for x in h0]
                psi0 = [-x for x in psi0]
        vol = self.volume_of(h0, psi0)
        if vol.body() == 0:
            raise ZeroBody("normalization volume has zero body (degenerate frame)")
        eps = 1 if vol.body() > 0 else -1
        return Surd.sqrt(vol * eps), h0, psi0

    def normalized_psi(self, orient=None):
        """``(H, Psi)`` as lists of :class:`Surd`; ``Psi`` is the vector-valued semidensity."""
        t, h0, psi0 = self.normalization(orient)
        tinv = t.inverse()
        return [tinv * x for x in h0], [t * x for x in psi0]

    # second order data in a Darboux chart
    def darboux_data(self):
        """``(w jets in zeta, local map z -> w at the point)``."""
        if self._local is not None:
            return self._local
        amb = self.surface.ambient
        if self.chart is None:
            if not self.s.canonical:
                raise ValueError("a Darboux chart is required for a non-canonical structure")
            lm = LocalMap.identity(amb, self.point, self.m, EMBED_ORDER)
        else:
            lm = self.chart.local_map(self.point, EMBED_ORDER)
        disp = {name: j - SuperPolynomial.constant(self.point[name], self.surface.params, self.m)
                for name, j in zip(amb.names, self._zjets)}
        wj = [img.substitute(disp, self.surface.params, order=EMBED_ORDER) for img in lm.images]
        self._local = (wj, lm)
        return self._local

    def darboux_log_gradient(self, lm: LocalMap) -> list:
        """``d log rho_w / d w^A`` where ``dv = rho_w dw``."""
        amb = self.surface.ambient
        base = self.dv.log_gradient_at(self.point)
        if self.chart is None:
            return base
        n_mat = lm.inverse_jacobian()
        out = []
        inv = lm.inverse()
        ber = inv.jacobian_jet().berezinian()
        bval = ber.constant_term()
        binv = bval.inverse()
        for k in range(len(amb.names)):
            acc = _zero(self.m)
            for a in range(len(amb.names)):
                if not n_mat[k, a].is_zero() and not base[a].is_zero():
                    acc = acc + n_mat[k, a] * base[a]
            acc = acc + ber.left_partial(lm.target.names[k]).constant_term() * binv
            out.append(acc)
        return out

    def truncated_divergence(self, psi: list) -> SuperNumber:
        """``Psi^A (-I_AK d_b d_a w^K Omega^ab (-1)^(s(K,a+b)+p(b)) + d_A log rho)`` in Darboux ``w``."""
        wj, lm = self.darboux_data()
        psi_w = lm.push_vector(psi)
        up = self.induced_upper_w(lm)
        names = self.surface.params.names
        n = self.surface.n
        dim = 2 * n
        total = _zero(self.m)
        # -I_AK: I_{x_i th_i} = -1, I_{th_i x_i} = 1
        for a_ in range(dim):
            pa = psi_w[a_]
            if pa.is_zero():
                continue
            kk = a_ + n if a_ < n else a_ - n
            i_ak = -1 if a_ < n else 1
            pk = self.par[kk]
            inner = _zero(self.m)
            for al, pal in enumerate(self.zpar):
                d1 = wj[kk].left_partial(names[al])
                if d1.is_zero():
                    continue
                for be, pbe in enumerate(self.zpar):
                    u = up[al, be]
                    if u.is_zero():
                        continue
                    d2 = d1.left_partial(names[be]).constant_term()
                    if d2.is_zero():
                        continue
                    s = pk * (pal + pbe) + pal + pbe + pbe
                    inner = inner + d2 * u * _sign(s)
            total = total + pa * inner * (-i_ak)
        lg = self.darboux_log_gradient(lm)
        for pa, g in zip(psi_w, lg):
            if not pa.is_zero() and not g.is_zero():
                total = total + pa * g
        return total

    def induced_upper_w(self, lm) -> SuperMatrix:
        """The induced ``Omega^ab``; the induced form does not depend on the ambient chart."""
        return self.induced_upper()

    def semidensity(self, orient=None) -> Surd:
        """``A``: the truncated divergence is linear in ``Psi``, so the surd factor is pulled out."""
        t, _, psi0 = self.normalization(orient)
        return t * self.truncated_divergence(psi0)


def _proportionality(v, w) -> SuperNumber:
    """``lam`` with ``v = lam w`` for two proportional vectors, read off a component of invertible body."""
    for a, b in zip(v, w):
        if b.body() != 0:
            return a * b.inverse()
    raise DegenerateInducedForm("orientation vector is nilpotent")


def level_set_orientation(lvl: "LevelSetSurface", s: OddSymplecticStructure, point) -> list:
    """``D_f + {f,f}/(2{f,phi}) D_phi`` at the point: the normal direction defined by ``(f, phi)``."""
    fphi = s.bracket(lvl.f, lvl.phi).evaluate(point)
    k = s.bracket(lvl.f, lvl.f).evaluate(point) * fphi.inverse() * SuperNumber.scalar(_half(), s.m)
    d_f = [x.evaluate(point) for x in s.hamiltonian_field(lvl.f).components]
    d_phi = [x.evaluate(point) for x in s.hamiltonian_field(lvl.phi).components]
    return [a + k * b for a, b in zip(d_f, d_phi)]


def _half():
    from fractions import Fraction

    return Fraction(1, 2)


# the definition through a prolongation
def truncated_divergence_by_prolongation(sp: SurfacePoint, lvl: LevelSetSurface, extra=(), order=1):
    """``div Psi~ - D_can(Pi, Psi~)`` at the point for the prolongation ``Psi~ = Psi_(f,phi) + f V + phi W``.

    ``extra`` is a pair of polynomial component lists ``(V, W)``; the field
    ``Psi_(f,phi)`` is the level-set normal field, which satisfies the
    normal-field conditions all along the surface.
    """
    from .charts import level_set_psi_jet

    s, dv = sp.s, sp.dv
    pt = sp.point
    fj = lvl.f.shift(pt, order=order + 2)
    pj = lvl.phi.shift(pt, order=order + 2)
    psi = level_set_psi_jet(fj, pj, s, order).components
    if extra:
        v, w = extra
        fo, po = fj.with_order(order), pj.with_order(order)
        psi = [c + fo * a.shift(pt, order=order) + po * b.shift(pt, order=order) for c, a, b in zip(psi, v, w)]
    field = LocalField(s.coords, pt, psi, 1, s.m, order)
    _, pi = sp.projectors()
    pair = OddNormalPair(pi, field)
    if sp.chart is None:
        lm = LocalMap.identity(s.coords, pt, s.m)
    else:
        lm = sp.chart.local_map(pt)
    # divergence of the odd jet at the point: the sign (-1)^(p(A)+p(A)) is always +1
    div = _zero(s.m)
    for name, comp in zip(s.coords.names, psi):
        div = div + comp.left_partial(name).constant_term()
    for comp, g in zip(psi, dv.log_gradient_at(pt)):
        div = div + comp.constant_term() * g
    return div - d_can(pair, lm), [c.constant_term() for c in psi]


# the level-set formula
def semidensity_dual(lvl: LevelSetSurface, s: OddSymplecticStructure, dv: VolumeForm, point, check=True):
    """``A~`` at a point of the locus ``f = phi = 0``.

    With ``Delta = div D`` and ``k = {f,f}/(2{f,phi})`` the gauge-covariant form is
    ``{f,phi}^(-1/2) (Delta f + k Delta phi - 2{f,{f,phi}}/{f,phi} - 2k{phi,{f,phi}}/{f,phi})``.
    """
    if check:
        lvl.check_on(point)
    f, phi = lvl.f, lvl.phi
    fphi_poly = s.bracket(f, phi)
    fphi = fphi_poly.evaluate(point)
    if fphi.body() == 0:
        raise ZeroBody("{f, phi} has zero body at the point")
    inv = fphi.inverse()
    k = s.bracket(f, f).evaluate(point) * inv * SuperNumber.scalar(_half(), s.m)
    d_f = divergence_at(s.hamiltonian_field(f), dv, point)
    d_phi = divergence_at(s.hamiltonian_field(phi), dv, point)
    t3 = s.bracket(f, fphi_poly).evaluate(point) * inv
    t4 = k * s.bracket(phi, fphi_poly).evaluate(point) * inv
    inner = d_f + k * d_phi - (t3 + t4) * 2
    eps = 1 if fphi.body() > 0 else -1
    return Surd.sqrt(fphi * eps).inverse() * inner


def dual_pairing(sp: SurfacePoint, lvl: LevelSetSurface) -> SuperNumber:
    """``(rho Ber(e..., X; f..., Y))^(1/2)`` with ``df(X) = 1``, ``dphi(Y) = 1`` and the cross terms zero.

    This is the factor that turns the dual density ``A~`` of ``(f, phi)`` into a
    density of the parametrization; it is invariant under adding tangent
    vectors to ``X`` and ``Y`` and transforms inversely to ``A~`` under
    ``(f, phi)`` mixing.
    """
    c = lvl.coords
    pt = sp.point
    grads = [[g.left_partial(v).evaluate(pt) for v in c.names] for g in (lvl.f, lvl.phi)]
    # X, Y solve X^A d_A f = 1, X^A d_A phi = 0 (and the swap); use the plane basis of Pi for a complement
    h0, psi0 = sp.plane_basis()
    basis = [h0, psi0]
    pars = [0, 1]
    mat = []
    for vec, pv in zip(basis, pars):
        mat.append([_apply_derivation(vec, grad) for grad in grads])
    m2 = SuperMatrix(mat, pars, [0, 1])
    inv = m2.inverse()
    x = [inv[0, 0] * a + inv[0, 1] * b for a, b in zip(h0, psi0)]
    y = [inv[1, 0] * a + inv[1, 1] * b for a, b in zip(h0, psi0)]
    vol = sp.volume_of(x, y)
    eps = 1 if vol.body() > 0 else -1
    return Surd.sqrt(vol * eps)


def _apply_derivation(vec, grad):
    acc = None
    for v, g in zip(vec, grad):
        if v.is_zero() or g.is_zero():
            continue
        t = v * g
        acc = t if acc is None else acc + t
    return acc if acc is not None else vec[0] * 0


def cross_check_constant(pairs) -> Surd:
    """The single constant ``c`` with ``A = c * B`` over ``(A, B)`` pairs (surds or Grassmann numbers).

    Pairs with ``B = 0`` are skipped (they must have ``A = 0`` too).  The ratio
    is read off the lowest-order term of ``B`` and then verified exactly on
    every pair.
    """
    pairs = [(_as_surd(a), _as_surd(b)) for a, b in pairs]
    c = None
    for a, b in pairs:
        if b.is_zero():
            if not a.is_zero():
                raise InconsistentConstant(f"A = {a} where the reference vanishes")
            continue
        ratio = _ratio(a, b)
        if c is None:
            c = ratio
        elif ratio != c:
            raise InconsistentConstant(f"instance-dependent ratio: {c} vs {ratio}")
    if c is None:
        raise InconsistentConstant("no instance with nonzero values")
    for a, b in pairs:
        if a != c * b:
            raise InconsistentConstant(f"A = {a} is not {c} times {b}")
    return c


def _as_surd(x):
    return x if isinstance(x, Surd) else Surd(x)


def _ratio(a: Surd, b: Surd) -> Surd:
    from fractions import Fraction

    key = min(b.value.terms, key=lambda k: (bin(k).count("1"), k))
    c = Fraction(a.value.terms.get(key, 0)) / b.value.terms[key]
    m = a.value.m
    return Surd(SuperNumber.scalar(c, m), a.radicand) * Surd(SuperNumber.scalar(1, m), b.radicand).inverse()


__all__ = [
    "LevelSetSurface",
    "Supersurface",
    "SurfacePoint",
    "cross_check_constant",
    "dual_pairing",
    "level_set_orientation",
    "semidensity_dual",
    "truncated_divergence_by_prolongation",
]
