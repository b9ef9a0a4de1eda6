"""Exact linear algebra over the rationals.

Everything here works on plain lists of ints/Fractions.  Rank and
determinant go through fraction-free (Bareiss) elimination so that large
intermediate entries stay integral; row reduction for canonical spanning
sets uses ordinary rational elimination with pivots normalized to 1, which
makes the reduced basis unique for a fixed column order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def _clear_row_denominators(row):
    denom = 1
    for x in row:
        if isinstance(x, Fraction):
            denom = denom * x.denominator // gcd(denom, x.denominator)
    return [int(x * denom) if isinstance(x, Fraction) else x * denom for x in row]


def rank(rows) -> int:
    """Rank of a matrix given as a list of rows, by Bareiss elimination."""
    m = [_clear_row_denominators(list(r)) for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, nrows):
            if not any(m[i][c2] for c2 in range(c, ncols)):
                continue
            for c2 in range(c + 1, ncols):
                num = m[r][c] * m[i][c2] - m[i][c] * m[r][c2]
                m[i][c2] = num // prev  # exact by Bareiss
            m[i][c] = 0
        prev = m[r][c]
        r += 1
    return r


def det(rows) -> Fraction:
    """Determinant of a square rational matrix (Bareiss, exact)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = 1  # det(cleared) = scale * det(original)
    m = []
    for r in rows:
        denom = 1
        for x in r:
            if isinstance(x, Fraction):
                denom = denom * x.denominator // gcd(denom, x.denominator)
        scale *= denom
        m.append([int(x * denom) for x in r])
    sign = 1
    prev = 1
    for c in range(n - 1):
        piv = None
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        for i in range(c + 1, n):
            for c2 in range(c + 1, n):
                m[i][c2] = (m[c][c] * m[i][c2] - m[i][c] * m[c][c2]) // prev
            m[i][c] = 0
        prev = m[c][c]
    return Fraction(sign * m[n - 1][n - 1]) / scale


def rref(rows):
    """Reduced row echelon form.

    Returns (reduced_nonzero_rows, pivot_columns).  Pivots are normalized
    to 1 and cleared above and below, so the result is the canonical basis
    of the row space for the given column order.
    """
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def solve(a_rows, b):
    """One exact solution x of A x = b, or None if inconsistent.

    Free variables are set to 0, so the answer is deterministic.
    """
    if not a_rows:
        return [] if not any(b) else None
    ncols = len(a_rows[0])
    aug = [list(r) + [bv] for r, bv in zip(a_rows, b)]
    red, pivots = rref(aug)
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        if p == ncols:
            return None  # pivot in the constant column
        x[p] = row[-1]
    return x


def kernel_basis(a_rows):
    """Basis of the right null space of A, as lists of Fractions."""
    if not a_rows:
        return []
    ncols = len(a_rows[0])
    red, pivots = rref(a_rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[free]
        basis.append(v)
    return basis


def invert(rows):
    """Inverse of a square rational matrix; raises on singular input."""
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
           for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


class Mat:
    """Small dense matrix of exact rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = [list(r) for r in rows]

    @classmethod
    def zeros(cls, n, m=None):
        m = n if m is None else m
        return cls([[0] * m for _ in range(n)])

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def __add__(self, other):
        return Mat([[a + b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat([[a - b for a, b in zip(r1, r2)]
                    for r1, r2 in zip(self.rows, other.rows)])

    def __rmul__(self, c):
        return Mat([[c * a for a in r] for r in self.rows])

    def __matmul__(self, other):
        bt = list(zip(*other.rows))
        return Mat([[sum(a * b for a, b in zip(row, col)) for col in bt]
                    for row in self.rows])

    def __eq__(self, other):
        return isinstance(other, Mat) and self.shape == other.shape and all(
            a == b for r1, r2 in zip(self.rows, other.rows)
            for a, b in zip(r1, r2))

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self.rows))

    def is_zero(self) -> bool:
        return all(not x for r in self.rows for x in r)

    def trace(self):
        return sum(self.rows[i][i] for i in range(len(self.rows)))

    def transpose(self):
        return Mat([list(c) for c in zip(*self.rows)])

    def commutator(self, other):
        return self @ other - other @ self

    def __repr__(self):
        return "Mat(%r)" % (self.rows,)
