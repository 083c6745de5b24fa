"""Polynomial superfunctions, left derivatives, substitution and evaluation.

A monomial is stored as ``(exponents, mask)``: ``exponents`` are the powers of
the even coordinates, ``mask`` a bitmask over all odd symbols -- the ``m``
Grassmann generators first (bits ``0..m-1``), then the odd coordinates.
The monomial reads ``c * g... * x^e * theta...`` with the odd factors in
ascending bit order, so products need only :func:`merge_sign`.

A polynomial may carry a truncation order.  Such a polynomial is a jet: all
products drop monomials whose coordinate degree exceeds the order.  Jets
are what makes pointwise work with inverses like ``1/f'(x)`` exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import GeneratorMismatch, ParityViolation, UnknownSymbol, ZeroBody
from .grassmann import (
    DEFAULT_GENERATORS,
    EVEN,
    MIXED,
    ODD,
    SuperNumber,
    _bits,
    below_sign,
    format_terms,
    merge_sign,
    popcount,
)


@dataclass(frozen=True)
class CoordinateSystem:
    """Names of the even and odd coordinates of a (super)space."""

    even: tuple = ()
    odd: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "even", tuple(self.even))
        object.__setattr__(self, "odd", tuple(self.odd))
        names = self.even + self.odd
        if len(set(names)) != len(names):
            raise ValueError(f"coordinate names not unique: {names}")

    @classmethod
    def ambient(cls, n: int) -> "CoordinateSystem":
        return cls(tuple(f"x{i}" for i in range(1, n + 1)), tuple(f"th{i}" for i in range(1, n + 1)))

    @classmethod
    def parameters(cls, k: int) -> "CoordinateSystem":
        return cls(tuple(f"xi{i}" for i in range(1, k + 1)), tuple(f"nu{i}" for i in range(1, k + 1)))

    @property
    def names(self) -> tuple:
        return self.even + self.odd

    @property
    def dim(self) -> int:
        return len(self.even) + len(self.odd)

    def parity(self, name: str) -> int:
        if name in self.even:
            return 0
        if name in self.odd:
            return 1
        raise UnknownSymbol(name)

    def parities(self) -> list:
        return [0] * len(self.even) + [1] * len(self.odd)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownSymbol(name) from None


def _degree(key, m) -> int:
    exps, mask = key
    return sum(exps) + popcount(mask >> m)


class SuperPolynomial:
    """Immutable polynomial on a coordinate system with Grassmann coefficients."""

    __slots__ = ("terms", "coords", "m", "order")

    def __init__(self, terms, coords: CoordinateSystem, m: int = DEFAULT_GENERATORS, order=None):
        self.coords = coords
        self.m = m
        self.order = order
        clean = {}
        for key, c in terms.items():
            if c != 0 and (order is None or _degree(key, m) <= order):
                clean[key] = c if isinstance(c, (float, Fraction)) else Fraction(c)
        self.terms = clean

    # construction
    @classmethod
    def zero(cls, coords, m=DEFAULT_GENERATORS, order=None):
        return cls({}, coords, m, order)

    @classmethod
    def constant(cls, value, coords, m=DEFAULT_GENERATORS, order=None):
        if isinstance(value, SuperNumber):
            if value.m != m:
                raise GeneratorMismatch(f"{value.m} vs {m}")
            zero = (0,) * len(coords.even)
            return cls({(zero, mask): c for mask, c in value.terms.items()}, coords, m, order)
        return cls({((0,) * len(coords.even), 0): value}, coords, m, order)

    @classmethod
    def variable(cls, name, coords, m=DEFAULT_GENERATORS, order=None):
        i = coords.index(name)
        ne = len(coords.even)
        if i < ne:
            exps = tuple(1 if j == i else 0 for j in range(ne))
            return cls({(exps, 0): 1}, coords, m, order)
        return cls({((0,) * ne, 1 << (m + i - ne)): 1}, coords, m, order)

    @classmethod
    def generator(cls, index, coords, m=DEFAULT_GENERATORS, order=None):
        return cls.constant(SuperNumber.generator(index, m), coords, m, order)

    @classmethod
    def parse(cls, text, coords, m=DEFAULT_GENERATORS):
        from .parsing import parse_expression

        return parse_expression(text, coords, m)

    def _new(self, terms, order="same"):
        return SuperPolynomial(terms, self.coords, self.m, self.order if order == "same" else order)

    def with_order(self, order) -> "SuperPolynomial":
        """Same terms, truncated at ``order`` (``None`` lifts truncation)."""
        return SuperPolynomial(self.terms, self.coords, self.m, order)

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((_degree(k, self.m) for k in self.terms), default=0)

    def parity(self) -> str:
        ps = {popcount(mask) & 1 for (_, mask) in self.terms}
        if len(ps) > 1:
            return MIXED
        return ODD if ps == {1} else EVEN

    def parity_bit(self) -> int:
        p = self.parity()
        if p == MIXED:
            raise ParityViolation(f"mixed-parity polynomial {self}")
        return 1 if p == ODD else 0

    def constant_term(self) -> SuperNumber:
        gmask = (1 << self.m) - 1
        return SuperNumber(
            {mask: c for (exps, mask), c in self.terms.items() if not any(exps) and not mask & ~gmask},
            self.m,
        )

    def is_constant(self) -> bool:
        gmask = (1 << self.m) - 1
        return all(not any(e) and not mask & ~gmask for (e, mask) in self.terms)

    def body_polynomial(self) -> "SuperPolynomial":
        """Terms free of generators and odd coordinates (the reduced function)."""
        return self._new({k: c for k, c in self.terms.items() if k[1] == 0})

    def is_nondegenerate(self) -> bool:
        """Some coefficient has a nonzero body (the function is not nilpotent)."""
        return not self.body_polynomial().is_zero()

    # arithmetic
    def _lift(self, other):
        if isinstance(other, SuperPolynomial):
            if other.m != self.m:
                raise GeneratorMismatch(f"{self.m} vs {other.m}")
            if other.coords != self.coords:
                raise ValueError(f"coordinate systems differ: {self.coords} vs {other.coords}")
            return other
        if isinstance(other, (SuperNumber, int, Rational, float)):
            return SuperPolynomial.constant(other, self.coords, self.m, self.order)
        return NotImplemented

    def _order_with(self, other):
        if self.order is None:
            return other.order
        if other.order is None:
            return self.order
        return min(self.order, other.order)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return self._new(out, self._order_with(other))

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        order = self._order_with(other)
        m = self.m
        out = {}
        right = [(eb, mb, vb, sum(eb) + popcount(mb >> m)) for (eb, mb), vb in other.terms.items()]
        for (ea, ma), va in self.terms.items():
            da = sum(ea) + popcount(ma >> m)
            for eb, mb, vb, db in right:
                if order is not None and da + db > order:
                    continue
                s = merge_sign(ma, mb)
                if s:
                    k = (tuple(x + y for x, y in zip(ea, eb)), ma | mb)
                    prod = va * vb
                    out[k] = out.get(k, 0) + (prod if s > 0 else -prod)
        return self._new(out, order)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, float)):
            return self * (1 / (other if isinstance(other, float) else Fraction(other)))
        return self * self._lift(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = SuperPolynomial.constant(1, self.coords, self.m, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rational, float, SuperNumber)):
            other = self._lift(other)
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.coords == other.coords and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.coords, self.m, frozenset(self.terms.items())))

    def inverse(self) -> "SuperPolynomial":
        """Inverse of a unit.

        Without truncation the polynomial must be ``c + nilpotent`` with ``c``
        an invertible constant; for a jet any invertible constant term works.
        """
        c = self.constant_term()
        if c.body() == 0:
            raise ZeroBody(f"cannot invert {self}: zero body")
        rest = self - c
        if self.order is None and not rest.body_polynomial().is_zero():
            raise ZeroBody(f"{self} is not a unit in the polynomial ring; evaluate pointwise")
        c_inv = SuperPolynomial.constant(c.inverse(), self.coords, self.m, self.order)
        n = -(rest * c_inv)
        result = SuperPolynomial.constant(1, self.coords, self.m, self.order)
        power = result
        while True:
            power = power * n
            if power.is_zero():
                break
            result = result + power
        return result * c_inv

    def sqrt(self) -> "SuperPolynomial":
        c = self.constant_term()
        root = c.sqrt()
        rest = (self - c) * SuperPolynomial.constant(c.inverse(), self.coords, self.m, self.order)
        if self.order is None and not rest.body_polynomial().is_zero():
            raise ZeroBody(f"{self} has no polynomial square root")
        result = SuperPolynomial.constant(1, self.coords, self.m, self.order)
        power = result
        coeff = Fraction(1)
        k = 0
        while True:
            power = power * rest
            if power.is_zero():
                break
            coeff = coeff * (Fraction(1, 2) - k) / (k + 1)
            k += 1
            result = result + power * coeff
        return result * root

    # calculus
    def left_partial(self, name: str) -> "SuperPolynomial":
        """Left derivative: odd variables are moved to the front before stripping."""
        i = self.coords.index(name)
        ne = len(self.coords.even)
        out = {}
        if i < ne:
            for (exps, mask), c in self.terms.items():
                e = exps[i]
                if e:
                    ex = exps[:i] + (e - 1,) + exps[i + 1 :]
                    k = (ex, mask)
                    out[k] = out.get(k, 0) + e * c
        else:
            bit = self.m + i - ne
            for (exps, mask), c in self.terms.items():
                if mask >> bit & 1:
                    k = (exps, mask ^ (1 << bit))
                    out[k] = out.get(k, 0) + below_sign(mask, bit) * c
        # the derivative of a k-jet is only known to order k-1
        return self._new(out, None if self.order is None else self.order - 1)

    def gradient(self) -> list:
        return [self.left_partial(v) for v in self.coords.names]

    def truncate(self, order) -> "SuperPolynomial":
        return self.with_order(order)

    # composition
    def substitute(self, mapping, target: CoordinateSystem = None, order="same") -> "SuperPolynomial":
        """Ring homomorphism sending each coordinate to a polynomial in ``target``.

        ``mapping`` is a dict name -> SuperPolynomial (missing names are left
        alone when ``target`` is this polynomial's own system).
        """
        target = self.coords if target is None else target
        out_order = self.order if order == "same" else order
        images = []
        for j, name in enumerate(self.coords.names):
            if name in mapping:
                img = mapping[name]
                if isinstance(img, SuperNumber):
                    img = SuperPolynomial.constant(img, target, self.m)
                elif not isinstance(img, SuperPolynomial):
                    img = SuperPolynomial.constant(img, target, self.m)
            elif target == self.coords:
                img = SuperPolynomial.variable(name, target, self.m)
            else:
                raise UnknownSymbol(f"no image given for {name}")
            if img.coords != target:
                raise ValueError(f"image of {name} not in target coordinates")
            want = self.coords.parity(name)
            if not img.is_zero() and img.parity() != (ODD if want else EVEN):
                raise ParityViolation(f"{name} (parity {want}) sent to {img} ({img.parity()})")
            images.append(img.with_order(out_order))
        ne = len(self.coords.even)
        gmask = (1 << self.m) - 1
        powers = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                powers[key] = images[i] ** e if e > 1 else images[i]
            return powers[key]

        zero_e = (0,) * len(target.even)
        acc = {}
        for (exps, mask), c in self.terms.items():
            term = SuperPolynomial({(zero_e, mask & gmask): c}, target, self.m, out_order)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            rest = mask >> self.m
            j = 0
            while rest:
                if rest & 1:
                    term = term * images[ne + j]
                rest >>= 1
                j += 1
            for k, v in term.terms.items():
                acc[k] = acc.get(k, 0) + v
        return SuperPolynomial(acc, target, self.m, out_order)

    def evaluate(self, point) -> SuperNumber:
        """Value at a Lambda-point (dict name -> SuperNumber)."""
        if isinstance(point, LambdaPoint):
            point = point.values
        missing = [v for v in self.coords.names if v not in point]
        if missing:
            raise UnknownSymbol(f"point lacks values for {missing}")
        empty = CoordinateSystem()
        mapping = {}
        for name in self.coords.names:
            val = point[name]
            if not isinstance(val, SuperNumber):
                val = SuperNumber.scalar(val, self.m)
            want = EVEN if self.coords.parity(name) == 0 else ODD
            if not val.is_zero() and val.parity() != want:
                raise ParityViolation(f"{name} must be {want}, got {val}")
            mapping[name] = SuperPolynomial.constant(val, empty, self.m)
        return self.substitute(mapping, empty, order=None).constant_term()

    def shift(self, point, order=None) -> "SuperPolynomial":
        """``f(point + h)`` as a polynomial (or jet) in the displacement ``h``."""
        if isinstance(point, LambdaPoint):
            point = point.values
        mapping = {}
        for name in self.coords.names:
            var = SuperPolynomial.variable(name, self.coords, self.m)
            mapping[name] = var + SuperPolynomial.constant(point[name], self.coords, self.m)
        return self.substitute(mapping, self.coords, order=order)

    def coefficient(self, exps, odd_mask=0) -> SuperNumber:
        """Grassmann coefficient of ``x^exps * theta^odd_mask`` (left-placed)."""
        gmask = (1 << self.m) - 1
        return SuperNumber(
            {mask & gmask: c for (e, mask), c in self.terms.items() if e == tuple(exps) and mask >> self.m == odd_mask},
            self.m,
        )

    # text
    def _factors(self, key):
        exps, mask = key
        out = [f"g{i + 1}" for i in range(self.m) if mask >> i & 1]
        for name, e in zip(self.coords.even, exps):
            if e == 1:
                out.append(name)
            elif e > 1:
                out.append(f"{name}^{e}")
        rest = mask >> self.m
        out.extend(self.coords.odd[j] for j in range(len(self.coords.odd)) if rest >> j & 1)
        return out

    def __str__(self):
        m = self.m

        def key(k):
            exps, mask = k
            return (-_degree(k, m), -popcount(mask & ((1 << m) - 1)), tuple(-e for e in exps), _bits(mask))

        return format_terms(self.terms.items(), self._factors, key)

    def __repr__(self):
        return f"SuperPolynomial({str(self)!r})"


class LambdaPoint:
    """Assignment of Grassmann numbers to coordinates, parity checked."""

    def __init__(self, coords: CoordinateSystem, values: dict, m: int = DEFAULT_GENERATORS):
        self.coords = coords
        self.m = m
        vals = {}
        for name in coords.names:
            if name not in values:
                raise UnknownSymbol(f"point lacks a value for {name}")
            v = values[name]
            if not isinstance(v, SuperNumber):
                v = SuperNumber.scalar(v, m)
            want = EVEN if coords.parity(name) == 0 else ODD
            if not v.is_zero() and v.parity() != want:
                raise ParityViolation(f"{name} must be {want}, got {v}")
            vals[name] = v
        self.values = vals

    def __getitem__(self, name):
        return self.values[name]

    def as_list(self) -> list:
        return [self.values[n] for n in self.coords.names]

    def __eq__(self, other):
        return isinstance(other, LambdaPoint) and self.values == other.values

    def __repr__(self):
        return "LambdaPoint(" + ", ".join(f"{k}={v}" for k, v in self.values.items()) + ")"


class VectorField:
    """``X^A d/dz^A`` with polynomial components and a declared parity."""

    def __init__(self, components, coords: CoordinateSystem, parity: int, check: bool = True):
        self.coords = coords
        self.components = list(components)
        self.parity = parity
        if len(self.components) != coords.dim:
            raise ValueError("wrong number of components")
        if check:
            for name, comp, pa in zip(coords.names, self.components, coords.parities()):
                if not comp.is_zero():
                    want = (parity + pa) % 2
                    if comp.parity() != (ODD if want else EVEN):
                        raise ParityViolation(f"component {name} of a parity-{parity} field has parity {comp.parity()}")

    def __call__(self, f: SuperPolynomial) -> SuperPolynomial:
        """Action as a left derivation: ``X f = X^A d_A f``."""
        total = SuperPolynomial.zero(f.coords, f.m, f.order)
        for name, comp in zip(self.coords.names, self.components):
            total = total + comp * f.left_partial(name)
        return total

    def evaluate(self, point) -> list:
        return [c.evaluate(point) for c in self.components]

    def __eq__(self, other):
        return isinstance(other, VectorField) and self.components == other.components

    def __repr__(self):
        return "VectorField[" + ", ".join(str(c) for c in self.components) + "]"
