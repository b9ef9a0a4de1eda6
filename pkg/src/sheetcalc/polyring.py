"""Sparse multivariate polynomials over exact rationals.

Coordinates a_1..a_n are the dual-basis functionals of a Lie algebra
basis; the ring optionally carries the Killing Gram matrix, which turns
polynomials into constant-coefficient differential operators (a_j acts as
the directional derivative along the Killing-dual basis vector).  That one
identification drives the pairing, the harmonicity test, and everything
the invariant-theory code needs.

Monomial keys are exponent tuples; the global monomial order is graded
lexicographic, fixed so row-reduced spans are canonical.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import ConfigurationError


def _monomial_sort_key(mono):
    return (sum(mono), mono)


class Poly:
    """A sparse polynomial; terms map exponent tuples to nonzero rationals."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c}

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        other = self.ring.coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.ring.coerce(other))

    def __rsub__(self, other):
        return self.ring.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not other:
                return self.ring.zero()
            return Poly(self.ring, {m: c * other for m, c in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                elif m in out:
                    del out[m]
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring is other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(self.key())

    def key(self):
        """Hashable canonical form, used for operator caches."""
        return frozenset((m, Fraction(c)) for m, c in self.terms.items())

    # -- queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; the zero polynomial reports -1."""
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def homogeneous_component(self, d: int) -> "Poly":
        return Poly(self.ring, {m: c for m, c in self.terms.items() if sum(m) == d})

    def constant_term(self):
        return self.terms.get((0,) * self.ring.n, 0)

    # -- calculus --------------------------------------------------------
    def diff(self, j: int) -> "Poly":
        """Plain partial derivative in coordinate j."""
        out = {}
        for m, c in self.terms.items():
            e = m[j]
            if e:
                m2 = m[:j] + (e - 1,) + m[j + 1:]
                out[m2] = out.get(m2, 0) + e * c
        return Poly(self.ring, out)

    def evaluate(self, coords):
        total = 0
        for m, c in self.terms.items():
            v = c
            for j, e in enumerate(m):
                if e:
                    v *= coords[j] ** e
            total += v
        return total

    # -- presentation ----------------------------------------------------
    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=_monomial_sort_key, reverse=True):
            c = self.terms[m]
            factors = ["y%d" % (j + 1) if e == 1 else "y%d^%d" % (j + 1, e)
                       for j, e in enumerate(m) if e]
            if factors:
                parts.append("%s*%s" % (c, "*".join(factors)))
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def to_json(self):
        return [[list(m), str(Fraction(c))]
                for m, c in sorted(self.terms.items(),
                                   key=lambda kv: _monomial_sort_key(kv[0]),
                                   reverse=True)]

    def __repr__(self):
        return "Poly(%s)" % self.text()


class PolyRing:
    """Polynomial functions on an n-dimensional space, optionally with a Gram matrix."""

    def __init__(self, n: int, gram=None):
        self.n = n
        self.gram = gram
        self._gram_inv = None
        self._dual_cache = {}
        self._perm_cache = {}

    @classmethod
    def for_algebra(cls, g) -> "PolyRing":
        ring = g._cache.get("polyring")
        if ring is None:
            ring = cls(g.n, gram=g.killing)
            g._cache["polyring"] = ring
        return ring

    # -- constructors ----------------------------------------------------
    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.constant(1)

    def constant(self, c) -> Poly:
        return Poly(self, {(0,) * self.n: c} if c else {})

    def coerce(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring is not self:
                raise ConfigurationError("polynomials from different rings")
            return value
        return self.constant(value)

    def coordinate(self, j: int) -> Poly:
        m = tuple(int(i == j) for i in range(self.n))
        return Poly(self, {m: 1})

    def monomial(self, exps, coeff=1) -> Poly:
        return Poly(self, {tuple(exps): coeff})

    def linear_form(self, x) -> Poly:
        """The linear polynomial B(x, .) attached to an algebra element."""
        if self.gram is None:
            raise ConfigurationError("ring carries no Gram matrix")
        coords = x.coords if hasattr(x, "coords") else x
        out = {}
        for j, a in enumerate(coords):
            if not a:
                continue
            row = self.gram[j]
            for k in range(self.n):
                if row[k]:
                    m = tuple(int(i == k) for i in range(self.n))
                    out[m] = out.get(m, 0) + a * row[k]
        return Poly(self, out)

    # -- the Killing-dual operator calculus --------------------------------
    def gram_inverse(self):
        if self.gram is None:
            raise ConfigurationError("ring carries no Gram matrix")
        if self._gram_inv is None:
            self._gram_inv = linalg.invert(self.gram)
        return self._gram_inv

    def dual_shift(self, q: Poly) -> Poly:
        """Rewrite q through the inverse Gram matrix.

        The result q* satisfies: applying q as a differential operator in
        the sense of the Killing identification equals applying q* with
        plain partial derivatives.
        """
        key = q.key()
        cached = self._dual_cache.get(key)
        if cached is not None:
            return cached
        inv = self.gram_inverse()
        lin = [Poly(self, {tuple(int(i == k) for i in range(self.n)): inv[j][k]
                           for k in range(self.n) if inv[j][k]})
               for j in range(self.n)]
        out = self.zero()
        for m, c in q.terms.items():
            term = self.constant(c)
            for j, e in enumerate(m):
                for _ in range(e):
                    term = term * lin[j]
            out = out + term
        self._dual_cache[key] = out
        return out

    def register_dual(self, q: Poly, dual: Poly):
        """Pre-seed the dual-shift cache (used when a cheaper route exists)."""
        self._dual_cache[q.key()] = dual

    def apply_operator(self, op: Poly, target: Poly) -> Poly:
        """Apply a plain-partial-derivative operator (no Gram rewriting)."""
        out = self.zero()
        acc = {}
        for gamma, c in op.terms.items():
            for alpha, d in target.terms.items():
                coeff = c * d
                rest = []
                ok = True
                for a, gexp in zip(alpha, gamma):
                    if gexp > a:
                        ok = False
                        break
                    for t in range(gexp):
                        coeff *= (a - t)
                    rest.append(a - gexp)
                if not ok or not coeff:
                    continue
                m = tuple(rest)
                s = acc.get(m, 0) + coeff
                if s:
                    acc[m] = s
                elif m in acc:
                    del acc[m]
        out = Poly(self, acc)
        return out

    def apply_dual(self, target: Poly, operator: Poly) -> Poly:
        """The derivative of `target` by `operator` under the Killing pairing."""
        return self.apply_operator(self.dual_shift(operator), target)

    def directional_derivative(self, p: Poly, x) -> Poly:
        """Derivative of p along the algebra element x (no Gram factor)."""
        coords = x.coords if hasattr(x, "coords") else x
        out = self.zero()
        for j, a in enumerate(coords):
            if a:
                out = out + a * p.diff(j)
        return out

    def _permanent(self, rows_idx, cols_idx):
        key = (rows_idx, cols_idx)
        cached = self._perm_cache.get(key)
        if cached is not None:
            return cached
        inv = self.gram_inverse()

        def rec(row_pos, remaining):
            if row_pos == len(rows_idx):
                return Fraction(1)
            total = Fraction(0)
            for t in range(len(remaining)):
                factor = inv[rows_idx[row_pos]][remaining[t]]
                if factor:
                    total += factor * rec(row_pos + 1, remaining[:t] + remaining[t + 1:])
            return total

        value = rec(0, cols_idx)
        self._perm_cache[key] = value
        return value

    def pairing(self, p: Poly, q: Poly) -> Fraction:
        """Symmetric bilinear pairing extending the Killing form to polynomials.

        Characterized by adjointness: pairing(derivative of p by q, f) equals
        pairing(p, q*f).  Homogeneous pieces of different degrees pair to 0.
        """
        if self.gram is None:
            raise ConfigurationError("pairing needs a ring with a Gram matrix")
        total = Fraction(0)
        by_deg_q = {}
        for m, c in q.terms.items():
            by_deg_q.setdefault(sum(m), []).append((m, c))
        for m1, c1 in p.terms.items():
            d = sum(m1)
            idx1 = tuple(j for j, e in enumerate(m1) for _ in range(e))
            for m2, c2 in by_deg_q.get(d, ()):
                idx2 = tuple(j for j, e in enumerate(m2) for _ in range(e))
                perm = self._permanent(idx1, idx2)
                if perm:
                    total += Fraction(c1) * Fraction(c2) * perm
        return total


def is_harmonic(q: Poly, gens) -> bool:
    """True iff q is annihilated by the dual operator of every generator."""
    ring = q.ring
    qdeg = q.degree()
    for p in gens:
        if p.degree() > qdeg:
            continue
        if not ring.apply_dual(q, p).is_zero():
            return False
    return True


def lie_derivative(p: Poly, g, z) -> Poly:
    """Action of the algebra element z on the polynomial function p.

    On linear forms this is B([z, x], .) when p = B(x, .); it extends to
    products as a derivation.
    """
    ring = p.ring
    if isinstance(z, int):
        z = g.basis_element(z)
    ad = g.ad_matrix(z)
    # action on the coordinate a_j is -(row j of ad z) dotted into coordinates
    action = []
    for j in range(ring.n):
        row = ad[j]
        action.append(Poly(ring, {tuple(int(i == k) for i in range(ring.n)): -row[k]
                                  for k in range(ring.n) if row[k]}))
    out = ring.zero()
    for m, c in p.terms.items():
        for j, e in enumerate(m):
            if not e:
                continue
            m2 = m[:j] + (e - 1,) + m[j + 1:]
            out = out + (e * c) * (Poly(ring, {m2: 1}) * action[j])
    return out


class PolySpace:
    """A finite-dimensional span of polynomials with a canonical reduced basis."""

    def __init__(self, ring, basis, degree=None):
        self.ring = ring
        self.basis = basis
        self.degree = degree
        self._monomials = sorted({m for p in basis for m in p.terms},
                                 key=_monomial_sort_key, reverse=True)
        self._col = {m: i for i, m in enumerate(self._monomials)}

    @classmethod
    def from_polys(cls, ring, polys, degree=None) -> "PolySpace":
        monomials = sorted({m for p in polys for m in p.terms},
                           key=_monomial_sort_key, reverse=True)
        col = {m: i for i, m in enumerate(monomials)}
        rows = []
        for p in polys:
            if p.is_zero():
                continue
            row = [Fraction(0)] * len(monomials)
            for m, c in p.terms.items():
                row[col[m]] = Fraction(c)
            rows.append(row)
        reduced, _ = linalg.rref(rows)
        basis = [Poly(ring, {monomials[i]: c for i, c in enumerate(row) if c})
                 for row in reduced]
        if degree is None and basis and all(p.is_homogeneous() for p in basis):
            degs = {p.degree() for p in basis}
            if len(degs) == 1:
                degree = degs.pop()
        return cls(ring, basis, degree)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, p: Poly) -> bool:
        rem = dict(p.terms)
        for b in self.basis:
            lead = max(b.terms, key=_monomial_sort_key)
            c = rem.get(lead)
            if c:
                for m, bc in b.terms.items():
                    s = rem.get(m, 0) - c * bc
                    if s:
                        rem[m] = s
                    elif m in rem:
                        del rem[m]
        return not rem

    def __eq__(self, other):
        if not isinstance(other, PolySpace):
            return NotImplemented
        return (self.ring is other.ring and len(self.basis) == len(other.basis)
                and all(a.terms == b.terms for a, b in zip(self.basis, other.basis)))

    def __repr__(self):
        return "PolySpace(dim=%d, degree=%s)" % (self.dim, self.degree)
