"""Exact arithmetic in a finite Grassmann algebra over the rationals.

A :class:`SuperNumber` is a linear combination of monomials
``g_{i1} g_{i2} ... g_{ik}`` (``i1 < i2 < ... < ik``) in ``m`` anticommuting
generators.  Monomials are encoded as bitmasks, bit ``i`` standing for
generator ``g_{i+1}``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from numbers import Rational

from .errors import GeneratorMismatch, NegativeBody, NonSquareBody, ZeroBody

DEFAULT_GENERATORS = 6

EVEN, ODD, MIXED = "even", "odd", "mixed"


def popcount(mask: int) -> int:
    return mask.bit_count()


@lru_cache(maxsize=1 << 16)
def merge_sign(a: int, b: int) -> int:
    """Sign of reordering the product ``mono(a) * mono(b)`` into ascending order.

    Returns 0 when the monomials share a factor (the product vanishes).
    This is the single sign routine used by every product in the package.
    """
    if a & b:
        return 0
    swaps = 0
    while b:
        low = b & -b
        # every factor of ``a`` above this bit has to be moved past it
        swaps += popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


def below_sign(mask: int, bit: int) -> int:
    """(-1)^(number of factors of ``mask`` preceding ``bit``)."""
    return -1 if popcount(mask & ((1 << bit) - 1)) & 1 else 1


def _coerce(value):
    if isinstance(value, float):
        return value
    return Fraction(value)


def rational_sqrt(q: Fraction) -> Fraction:
    """Exact square root of a non-negative rational or :class:`NonSquareBody`."""
    q = Fraction(q)
    if q < 0:
        raise NegativeBody(f"negative body {q}")
    num, den = isqrt(q.numerator), isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise NonSquareBody(f"{q} is not the square of a rational")
    return Fraction(num, den)


class SuperNumber:
    """Immutable element of the Grassmann algebra with ``m`` generators."""

    __slots__ = ("terms", "m")

    def __init__(self, terms=None, m: int = DEFAULT_GENERATORS):
        self.m = m
        clean = {}
        if terms:
            for mask, c in terms.items():
                if c != 0:
                    clean[mask] = _coerce(c)
        self.terms = clean

    # construction helpers
    @classmethod
    def scalar(cls, value, m: int = DEFAULT_GENERATORS) -> "SuperNumber":
        return cls({0: value}, m)

    @classmethod
    def generator(cls, index: int, m: int = DEFAULT_GENERATORS) -> "SuperNumber":
        """The generator ``g_index`` (1-based)."""
        if not 1 <= index <= m:
            raise ValueError(f"generator g{index} outside 1..{m}")
        return cls({1 << (index - 1): 1}, m)

    @classmethod
    def monomial(cls, indices, coeff=1, m: int = DEFAULT_GENERATORS) -> "SuperNumber":
        """``coeff * g_{i1} * g_{i2} * ...`` in the given (possibly unsorted) order."""
        result = cls.scalar(coeff, m)
        for i in indices:
            result = result * cls.generator(i, m)
        return result

    @classmethod
    def parse(cls, text: str, m: int = DEFAULT_GENERATORS) -> "SuperNumber":
        from .parsing import parse_supernumber

        return parse_supernumber(text, m)

    # basic queries
    def body(self):
        return self.terms.get(0, Fraction(0))

    def soul(self) -> "SuperNumber":
        return SuperNumber({k: v for k, v in self.terms.items() if k}, self.m)

    def parity(self) -> str:
        parities = {popcount(k) & 1 for k in self.terms}
        if len(parities) > 1:
            return MIXED
        return ODD if parities == {1} else EVEN

    def is_zero(self) -> bool:
        return not self.terms

    def is_even(self) -> bool:
        return self.parity() == EVEN

    def is_odd(self) -> bool:
        return self.parity() == ODD and bool(self.terms)

    def even_part(self) -> "SuperNumber":
        return SuperNumber({k: v for k, v in self.terms.items() if not popcount(k) & 1}, self.m)

    def odd_part(self) -> "SuperNumber":
        return SuperNumber({k: v for k, v in self.terms.items() if popcount(k) & 1}, self.m)

    def is_exact(self) -> bool:
        return all(not isinstance(v, float) for v in self.terms.values())

    # arithmetic
    def _lift(self, other) -> "SuperNumber":
        if isinstance(other, SuperNumber):
            if other.m != self.m:
                raise GeneratorMismatch(f"generator counts differ: {self.m} vs {other.m}")
            return other
        if isinstance(other, (int, Rational, float)):
            return SuperNumber.scalar(other, self.m)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return SuperNumber(out, self.m)

    __radd__ = __add__

    def __neg__(self):
        return SuperNumber({k: -v for k, v in self.terms.items()}, self.m)

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
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                s = merge_sign(ka, kb)
                if s:
                    k = ka | kb
                    out[k] = out.get(k, 0) + s * va * vb
        return SuperNumber(out, self.m)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __truediv__(self, other):
        if isinstance(other, (int, Rational, float)):
            return self * (1 / _coerce(other))
        return self * self._lift(other).inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = SuperNumber.scalar(1, self.m)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Rational, float)):
            other = SuperNumber.scalar(other, self.m)
        if not isinstance(other, SuperNumber):
            return NotImplemented
        return self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def inverse(self) -> "SuperNumber":
        """Two-sided inverse via the terminating series in the nilpotent part."""
        b = self.body()
        if b == 0:
            raise ZeroBody(f"cannot invert {self}: zero body")
        inv_b = 1 / b
        n = -(self.soul() * inv_b)
        result = SuperNumber.scalar(1, self.m)
        power = SuperNumber.scalar(1, self.m)
        while True:
            power = power * n
            if power.is_zero():
                break
            result = result + power
        return result * inv_b

    def sqrt(self, exact: bool = True) -> "SuperNumber":
        """Square root with the positive root of the body; binomial series on the soul."""
        if self.odd_part().terms:
            raise ValueError("sqrt is only defined for even elements")
        b = self.body()
        if b < 0:
            raise NegativeBody(f"negative body {b}")
        if b == 0:
            raise ZeroBody("sqrt of an element with zero body")
        if exact:
            root = rational_sqrt(b)
        else:
            root = float(b) ** 0.5
        n = self.soul() * (1 / _coerce(b))
        result = SuperNumber.scalar(1, self.m)
        power = SuperNumber.scalar(1, self.m)
        coeff = Fraction(1) if exact else 1.0
        k = 0
        while True:
            power = power * n
            if power.is_zero():
                break
            # binomial(1/2, k+1) from binomial(1/2, k)
            coeff = coeff * (Fraction(1, 2) - k) / (k + 1)
            k += 1
            result = result + power * coeff
        return result * root

    def nilpotency_check(self) -> bool:
        """soul^(m+1) == 0, as a self check."""
        return (self.soul() ** (self.m + 1)).is_zero()

    # text form
    def __str__(self):
        return format_terms(
            ((mask, c) for mask, c in self.terms.items()),
            lambda mask: [f"g{i + 1}" for i in range(self.m) if mask >> i & 1],
            key=lambda mask: (-popcount(mask), _bits(mask)),
        )

    def __repr__(self):
        return f"SuperNumber({str(self)!r}, m={self.m})"


def _bits(mask: int):
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def format_coefficient(c) -> str:
    if isinstance(c, Fraction):
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return repr(c)


def format_terms(items, factors_of, key) -> str:
    """Canonical ``a*u*v + b*w - c`` rendering shared by numbers and polynomials."""
    items = sorted(items, key=lambda kv: key(kv[0]))
    if not items:
        return "0"
    parts = []
    for i, (k, c) in enumerate(items):
        factors = factors_of(k)
        neg = c < 0
        mag = -c if neg else c
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = format_coefficient(mag) + "*" + "*".join(factors)
        else:
            body = format_coefficient(mag)
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def squarefree_split(q) -> tuple:
    """``(k, r)`` with ``sqrt(q) = k sqrt(r)``, ``k`` rational and ``r`` a squarefree positive integer."""
    from sympy import factorint

    q = Fraction(q)
    if q <= 0:
        raise NegativeBody(f"non-positive radicand {q}")
    whole = q.numerator * q.denominator
    k, r = 1, 1
    for prime, e in factorint(whole).items():
        k *= prime ** (e // 2)
        if e % 2:
            r *= prime
    return Fraction(k, q.denominator), r


class Surd:
    """``sqrt(radicand) * value``: an exact element of Q(sqrt r) tensored with the Grassmann algebra."""

    __slots__ = ("radicand", "value")

    def __init__(self, value: SuperNumber, radicand: int = 1):
        self.value = value
        self.radicand = radicand if not value.is_zero() else 1

    @classmethod
    def sqrt(cls, x: SuperNumber) -> "Surd":
        """Square root of an even element with positive body."""
        b = x.body()
        if b <= 0:
            raise NegativeBody(f"body {b} has no positive square root")
        k, r = squarefree_split(b)
        return cls((x * (1 / _coerce(b))).sqrt() * k, r)

    def __mul__(self, other):
        if isinstance(other, Surd):
            g = gcd(self.radicand, other.radicand)
            r = (self.radicand // g) * (other.radicand // g)
            return Surd(self.value * other.value * g, r)
        return Surd(self.value * other, self.radicand)

    __rmul__ = __mul__

    def inverse(self) -> "Surd":
        return Surd(self.value.inverse() * Fraction(1, self.radicand), self.radicand)

    def __truediv__(self, other):
        if isinstance(other, (Surd, SuperNumber)):
            return self * other.inverse()
        return self * (1 / _coerce(other))

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Surd):
            other = Surd(other if isinstance(other, SuperNumber) else SuperNumber.scalar(other, self.value.m))
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.radicand == other.radicand and self.value == other.value

    def __hash__(self):
        return hash((self.radicand, self.value))

    def parity(self) -> str:
        return self.value.parity()

    def __str__(self):
        if self.radicand == 1:
            return str(self.value)
        return f"sqrt({self.radicand})*({self.value})"

    def __repr__(self):
        return f"Surd({self})"
