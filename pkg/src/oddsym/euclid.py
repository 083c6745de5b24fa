"""Classical hypersurfaces in Euclidean space: normal divergence, unit normal
and the mean-curvature density, used as a floating-point structural oracle.

Components are either expression strings in ``t1..t{n-1}`` (differentiated
symbolically) or plain callables (differentiated by central differences with
one Richardson step).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import sympy
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from .errors import DegenerateInducedForm, NotOrthogonal, ParseError

FD_STEP = 1e-5
_FUNCS = {"sin": sympy.sin, "cos": sympy.cos, "exp": sympy.exp, "sqrt": sympy.sqrt, "pi": sympy.pi}


def parse_real(text: str, params) -> sympy.Expr:
    """Real expression in the named parameters; ``^`` is accepted as power."""
    local = {p: sympy.Symbol(p, real=True) for p in params}
    local.update(_FUNCS)
    try:
        expr = parse_expr(text.replace("^", "**"), local_dict=local, global_dict={"Integer": sympy.Integer,
                          "Float": sympy.Float, "Rational": sympy.Rational, "Symbol": sympy.Symbol},
                          transformations=standard_transformations, evaluate=True)
    except Exception as exc:
        raise ParseError(f"cannot parse {text!r}: {exc}") from None
    unknown = {str(s) for s in expr.free_symbols} - set(params)
    if unknown:
        raise ParseError(f"unknown symbols {sorted(unknown)} in {text!r}")
    return expr


@dataclass
class Hypersurface:
    """``x^i(t)`` for ``t`` in ``n - 1`` parameters; ``components`` are strings, sympy expressions or callables."""

    components: list
    params: tuple = None
    _derivs: list = field(default=None, init=False, repr=False)

    def __post_init__(self):
        n = len(self.components)
        if self.params is None:
            self.params = tuple(f"t{i + 1}" for i in range(n - 1))
        if len(self.params) != n - 1:
            raise ValueError("a hypersurface in E^n needs n - 1 parameters")
        comps = [parse_real(c, self.params) if isinstance(c, str) else c for c in self.components]
        self.components = comps
        if all(isinstance(c, sympy.Expr) for c in comps):
            syms = [sympy.Symbol(p, real=True) for p in self.params]
            first = [[sympy.diff(c, a) for a in syms] for c in comps]
            second = [[[sympy.diff(d, b) for b in syms] for d in row] for row in first]
            self._derivs = [
                sympy.lambdify(syms, comps, "math"),
                sympy.lambdify(syms, first, "math"),
                sympy.lambdify(syms, second, "math"),
            ]

    @property
    def dim(self) -> int:
        return len(self.components)

    @property
    def symbolic(self) -> bool:
        return self._derivs is not None

    def jet(self, t):
        """``(x, X1[a][i], X2[a][b][i])`` at the parameter point ``t``."""
        t = [float(v) for v in t]
        if self._derivs is not None:
            x, d1, d2 = (np.array(f(*t), dtype=float) for f in self._derivs)
            return x, d1.T, np.transpose(d2, (1, 2, 0))
        return self._fd_jet(np.array(t))

    def _fd_jet(self, t):
        f = lambda p: np.array([c(*p) for c in self.components], dtype=float)  # noqa: E731
        k = len(t)
        eye = np.eye(k)

        def rich(g):
            return (4 * g(FD_STEP / 2) - g(FD_STEP)) / 3

        d1 = np.array([rich(lambda h, a=a: (f(t + h * eye[a]) - f(t - h * eye[a])) / (2 * h)) for a in range(k)])
        d2 = np.empty((k, k, self.dim))
        for a in range(k):
            for b in range(k):
                if a == b:
                    g = lambda h, a=a: (f(t + h * eye[a]) - 2 * f(t) + f(t - h * eye[a])) / h ** 2  # noqa: E731
                else:
                    def g(h, a=a, b=b):
                        ea, eb = h * eye[a], h * eye[b]
                        return (f(t + ea + eb) - f(t + ea - eb) - f(t - ea + eb) + f(t - ea - eb)) / (4 * h * h)
                d2[a, b] = rich(g)
        return f(t), d1, d2

    def metric(self, t) -> np.ndarray:
        _, d1, _ = self.jet(t)
        return d1 @ d1.T

    def reparametrize(self, old_of_new: list, new_params=None) -> "Hypersurface":
        """Substitute ``t = t(s)``; only for symbolic surfaces."""
        if not self.symbolic:
            raise ValueError("reparametrization needs symbolic components")
        new_params = tuple(new_params or self.params)
        subs = {sympy.Symbol(p, real=True): parse_real(e, new_params) if isinstance(e, str) else e
                for p, e in zip(self.params, old_of_new)}
        return Hypersurface([c.xreplace(subs) for c in self.components], new_params)


def _inverse_metric(g):
    if abs(np.linalg.det(g)) < 1e-14:
        raise DegenerateInducedForm("induced metric is degenerate")
    return np.linalg.inv(g)


def unit_normal(surface: Hypersurface, t, outward_from=None) -> np.ndarray:
    """Unit normal; outward from ``outward_from`` if given, else ``(tangent frame, N)`` positively oriented."""
    x, d1, _ = surface.jet(t)
    n = surface.dim
    # the generalized cross product: cofactors of the frame
    vec = np.array([(-1) ** (n - 1 + i) * np.linalg.det(np.delete(d1, i, axis=1)) for i in range(n)])
    norm = np.linalg.norm(vec)
    if norm < 1e-14:
        raise DegenerateInducedForm("tangent frame is degenerate")
    vec = vec / norm
    if outward_from is not None and np.dot(vec, x - np.asarray(outward_from, dtype=float)) < 0:
        vec = -vec
    return vec


def normal_divergence(surface: Hypersurface, normal, t, tol=1e-9) -> float:
    """``R^i d_a d_b x^i g^{ab}`` for a field ``R`` orthogonal to the surface at ``t``."""
    _, d1, d2 = surface.jet(t)
    r = np.asarray(normal, dtype=float)
    scale = max(1.0, float(np.linalg.norm(r)))
    if np.max(np.abs(d1 @ r)) > tol * scale * max(1.0, float(np.max(np.abs(d1)))):
        raise NotOrthogonal("the field is not orthogonal to the tangent plane")
    ginv = _inverse_metric(d1 @ d1.T)
    return float(np.einsum("i,abi,ab->", r, d2, ginv))


def mean_curvature_density(surface: Hypersurface, t, outward_from=None) -> float:
    """``N^i d_a d_b x^i g^{ab} sqrt(det g)`` with the unit normal ``N``."""
    g = surface.metric(t)
    nvec = unit_normal(surface, t, outward_from)
    return normal_divergence(surface, nvec, t) * math.sqrt(np.linalg.det(g))


def mean_curvature_ratio(surface: Hypersurface, t, outward_from=None) -> float:
    """``H / sqrt(det g)``, the parametrization-free part."""
    return normal_divergence(surface, unit_normal(surface, t, outward_from), t)


def jacobian_determinant(old_of_new: list, new_params, s) -> float:
    """``det dt/ds`` for a reparametrization given by expressions in ``new_params``."""
    syms = [sympy.Symbol(p, real=True) for p in new_params]
    exprs = [parse_real(e, new_params) if isinstance(e, str) else e for e in old_of_new]
    jac = sympy.Matrix([[sympy.diff(e, v) for v in syms] for e in exprs])
    return float(jac.det().subs(dict(zip(syms, s))))


def sphere(radius=1, n=3) -> Hypersurface:
    """Hyperspherical angles ``t1..t{n-1}``: ``x1 = R cos t1``, ..., last two use ``cos/sin t{n-1}``."""
    r = sympy.nsimplify(radius)
    ts = [sympy.Symbol(f"t{i + 1}", real=True) for i in range(n - 1)]
    comps = []
    prod = r
    for i in range(n - 1):
        comps.append(prod * sympy.cos(ts[i]))
        prod = prod * sympy.sin(ts[i])
    comps.append(prod)
    return Hypersurface(comps, tuple(str(t) for t in ts))


def plane(n=3) -> Hypersurface:
    return Hypersurface([f"t{i + 1}" for i in range(n - 1)] + ["0"])


def helicoid(pitch=1) -> Hypersurface:
    return Hypersurface(["t1*cos(t2)", "t1*sin(t2)", f"{pitch}*t2"])


def cylinder(radius=2) -> Hypersurface:
    return Hypersurface([f"{radius}*cos(t1)", f"{radius}*sin(t1)", "t2"])


__all__ = [
    "Hypersurface",
    "cylinder",
    "helicoid",
    "jacobian_determinant",
    "mean_curvature_density",
    "mean_curvature_ratio",
    "normal_divergence",
    "parse_real",
    "plane",
    "sphere",
    "unit_normal",
]
