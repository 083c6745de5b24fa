"""Parity-blocked matrices over Grassmann numbers or superpolynomials.

Conventions: a matrix row is indexed by the *input* slot and a column by
the *output* slot, vectors are row vectors and coefficients multiply from
the left, so ``apply(L, X) = X . L`` reproduces ``X^B L^A_B d_A``.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from numbers import Rational

from .errors import ParityViolation, ShapeMismatch, SingularBody
from .grassmann import EVEN, ODD, SuperNumber
from .superpoly import SuperPolynomial


def _body(x):
    if isinstance(x, SuperNumber):
        return x.body()
    if isinstance(x, SuperPolynomial):
        return x.constant_term().body()
    return Fraction(x)


def _parity_of(x):
    if isinstance(x, (SuperNumber, SuperPolynomial)):
        return x.parity()
    return EVEN


def _is_zero(x):
    if isinstance(x, (SuperNumber, SuperPolynomial)):
        return x.is_zero()
    return x == 0


def _inv(x):
    if isinstance(x, (SuperNumber, SuperPolynomial)):
        return x.inverse()
    return 1 / Fraction(x)


class SuperMatrix:
    """Immutable matrix with row and column parity signatures."""

    def __init__(self, entries, row_parities=None, col_parities=None):
        self.entries = [list(r) for r in entries]
        nr = len(self.entries)
        nc = len(self.entries[0]) if nr else 0
        if any(len(r) != nc for r in self.entries):
            raise ShapeMismatch("ragged matrix")
        self.row_parities = list(row_parities) if row_parities is not None else [0] * nr
        self.col_parities = list(col_parities) if col_parities is not None else [0] * nc
        if len(self.row_parities) != nr or len(self.col_parities) != nc:
            raise ShapeMismatch("parity signature does not match shape")

    @property
    def shape(self):
        return len(self.entries), len(self.col_parities)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def _sample(self):
        for r in self.entries:
            for x in r:
                if isinstance(x, (SuperNumber, SuperPolynomial)):
                    return x
        return None

    def _unit(self, value):
        s = self._sample()
        if s is None:
            return Fraction(value)
        if isinstance(s, SuperNumber):
            return SuperNumber.scalar(value, s.m)
        return SuperPolynomial.constant(value, s.coords, s.m, s.order)

    @classmethod
    def identity(cls, parities, like=None):
        n = len(parities)

        def unit(v):
            if like is None:
                return Fraction(v)
            if isinstance(like, SuperNumber):
                return SuperNumber.scalar(v, like.m)
            return SuperPolynomial.constant(v, like.coords, like.m, like.order)

        return cls([[unit(1 if i == j else 0) for j in range(n)] for i in range(n)], parities, parities)

    def is_even(self) -> bool:
        """Entry parity equals row parity + column parity in every slot."""
        for i, r in enumerate(self.entries):
            for j, x in enumerate(r):
                if _is_zero(x):
                    continue
                want = (self.row_parities[i] + self.col_parities[j]) % 2
                if _parity_of(x) != (ODD if want else EVEN):
                    return False
        return True

    def check_even(self):
        if not self.is_even():
            raise ParityViolation("matrix is not even (entry parities do not follow the block signature)")

    # algebra
    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        n, k = self.shape
        p = other.shape[1]
        out = []
        for i in range(n):
            row = []
            for j in range(p):
                acc = None
                for t in range(k):
                    a, b = self.entries[i][t], other.entries[t][j]
                    if _is_zero(a) or _is_zero(b):
                        continue
                    prod = a * b
                    acc = prod if acc is None else acc + prod
                row.append(acc if acc is not None else self._unit(0) if self._sample() is not None else other._unit(0))
            out.append(row)
        return SuperMatrix(out, self.row_parities, other.col_parities)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeMismatch("shape mismatch in addition")
        return SuperMatrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)],
            self.row_parities,
            self.col_parities,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SuperMatrix([[c * x for x in r] for r in self.entries], self.row_parities, self.col_parities)

    def __eq__(self, other):
        if not isinstance(other, SuperMatrix) or self.shape != other.shape:
            return False
        return all(_is_zero(a - b) for r1, r2 in zip(self.entries, other.entries) for a, b in zip(r1, r2))

    def map(self, fn) -> "SuperMatrix":
        return SuperMatrix([[fn(x) for x in r] for r in self.entries], self.row_parities, self.col_parities)

    def row(self, i) -> list:
        return list(self.entries[i])

    def block(self, rows, cols) -> "SuperMatrix":
        return SuperMatrix(
            [[self.entries[i][j] for j in cols] for i in rows],
            [self.row_parities[i] for i in rows],
            [self.col_parities[j] for j in cols],
        )

    def _even_odd_indices(self, parities):
        return [i for i, p in enumerate(parities) if p == 0], [i for i, p in enumerate(parities) if p == 1]

    # inverse
    def inverse(self) -> "SuperMatrix":
        """Two-sided inverse by Gauss-Jordan with invertible-body pivots."""
        n, k = self.shape
        if n != k:
            raise ShapeMismatch("inverse of a non-square matrix")
        a = [list(r) for r in self.entries]
        inv = SuperMatrix.identity(self.col_parities, self._sample()).entries
        inv = [list(r) for r in inv]
        for col in range(n):
            pivot = next((r for r in range(col, n) if _body(a[r][col]) != 0), None)
            if pivot is None:
                raise SingularBody("matrix body is singular")
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            pinv = _inv(a[col][col])
            a[col] = [pinv * x for x in a[col]]
            inv[col] = [pinv * x for x in inv[col]]
            for r in range(n):
                if r == col or _is_zero(a[r][col]):
                    continue
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - factor * y for x, y in zip(inv[r], inv[col])]
        return SuperMatrix(inv, self.col_parities, self.row_parities)

    # determinants
    def det(self):
        """Determinant of a matrix whose entries commute (even entries)."""
        n, k = self.shape
        if n != k:
            raise ShapeMismatch("det of a non-square matrix")
        if n == 0:
            return self._unit(1) if self._sample() is not None else Fraction(1)
        a = [list(r) for r in self.entries]
        sign = 1
        result = None
        for col in range(n):
            pivot = next((r for r in range(col, n) if _body(a[r][col]) != 0), None)
            if pivot is None:
                # singular body: fall back to the permutation expansion of what remains
                rest = SuperMatrix([row[col:] for row in a[col:]])
                tail = rest._leibniz()
                return tail * sign if result is None else result * tail * sign
            if pivot != col:
                a[col], a[pivot] = a[pivot], a[col]
                sign = -sign
            p = a[col][col]
            result = p if result is None else result * p
            pinv = _inv(p)
            for r in range(col + 1, n):
                if _is_zero(a[r][col]):
                    continue
                factor = a[r][col] * pinv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
        return result * sign

    def _leibniz(self):
        n = self.shape[0]
        total = None
        for perm in permutations(range(n)):
            inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
            term = None
            for i, j in enumerate(perm):
                x = self.entries[i][j]
                term = x if term is None else term * x
            term = term if inversions % 2 == 0 else -term
            total = term if total is None else total + term
        return total

    def berezinian(self):
        """Ber = det(A00 - A01 A11^-1 A10) / det(A11) for a square even matrix."""
        n, k = self.shape
        if n != k:
            raise ShapeMismatch("Berezinian of a non-square matrix")
        if self.row_parities != self.col_parities:
            raise ShapeMismatch("Berezinian needs matching row and column signatures")
        self.check_even()
        ev, od = self._even_odd_indices(self.row_parities)
        a00 = self.block(ev, ev)
        if od:
            a01, a10, a11 = self.block(ev, od), self.block(od, ev), self.block(od, od)
            try:
                a11_inv = a11.inverse()
            except SingularBody:
                raise SingularBody("odd-odd block has singular body") from None
            d11 = a11.det()
            schur = a00 - a01 @ a11_inv @ a10 if ev else a00
        else:
            schur, d11 = a00, None
        d00 = schur.det() if ev else self._unit(1)
        if d11 is None:
            return d00
        return d00 * _inv(d11)

    def supertrace(self):
        total = self._unit(0)
        for i, p in enumerate(self.row_parities):
            x = self.entries[i][i]
            total = total + (-x if p else x)
        return total

    def __repr__(self):
        rows = ["[" + ", ".join(str(x) for x in r) + "]" for r in self.entries]
        return "SuperMatrix(" + ", ".join(rows) + ")"


def apply(matrix: SuperMatrix, vector: list) -> list:
    """Row vector times matrix: ``(X . L)^A = X^B L[B][A]``."""
    if len(vector) != matrix.shape[0]:
        raise ShapeMismatch("vector length does not match matrix rows")
    out = []
    for j in range(matrix.shape[1]):
        acc = None
        for i, x in enumerate(vector):
            a = matrix.entries[i][j]
            if _is_zero(x) or _is_zero(a):
                continue
            prod = x * a
            acc = prod if acc is None else acc + prod
        if acc is None:
            acc = (vector[0] * 0) if vector else Fraction(0)
        out.append(acc)
    return out
