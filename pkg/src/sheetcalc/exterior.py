"""Exterior algebra on a Chevalley-realized Lie algebra.

Elements are stored sparsely as {basis-subset bitmask: coefficient}; the
full 2^n space is never materialized.  The degree-one coboundary dx is
pinned down by the contract (dx, u wedge v) = -B(x, [u, v]) under the
Gram-determinant extension of the Killing form, and the polynomial-to-
exterior homomorphism sends the linear form of x to -dx so that powers of
linear forms land exactly on powers of coboundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import ConfigurationError
from .chevalley import LieAlgebra, LieElement, orbit_dim
from .polyring import Poly, PolyRing


class ExtElement:
    """Sparse exterior-algebra element over the algebra's basis labels."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms):
        self.algebra = algebra
        self.terms = {m: c for m, c in terms.items() if c}

    # -- linear structure --------------------------------------------------
    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            elif m in out:
                del out[m]
        return ExtElement(self.algebra, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        if not c:
            return ExtElement(self.algebra, {})
        return ExtElement(self.algebra, {m: c * v for m, v in self.terms.items()})

    def __neg__(self):
        return (-1) * self

    def is_zero(self) -> bool:
        return not self.terms

    def grades(self):
        return sorted({m.bit_count() for m in self.terms})

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def wedge(self, other: "ExtElement") -> "ExtElement":
        if other.algebra is not self.algebra:
            raise ConfigurationError("wedge of elements over different algebras")
        out = {}
        for s, a in self.terms.items():
            for t, b in other.terms.items():
                if s & t:
                    continue
                sign = 1
                rest = t
                while rest:
                    low = rest & -rest
                    # count labels of s that must jump over this label of t
                    if (s >> low.bit_length()).bit_count() & 1:
                        sign = -sign
                    rest ^= low
                m = s | t
                v = out.get(m, 0) + sign * a * b
                if v:
                    out[m] = v
                elif m in out:
                    del out[m]
        return ExtElement(self.algebra, out)

    def wedge_power(self, k: int) -> "ExtElement":
        out = ext_scalar(self.algebra, 1)
        for _ in range(k):
            out = out.wedge(self)
        return out

    def __eq__(self, other):
        return (isinstance(other, ExtElement) and other.algebra is self.algebra
                and {m: Fraction(c) for m, c in self.terms.items()}
                == {m: Fraction(c) for m, c in other.terms.items()})

    def __hash__(self):
        return hash(frozenset((m, Fraction(c)) for m, c in self.terms.items()))

    def to_json(self):
        out = []
        for m in sorted(self.terms):
            labels = [self.algebra.labels[i] for i in range(self.algebra.n) if m >> i & 1]
            out.append([labels, str(Fraction(self.terms[m]))])
        return out

    def __repr__(self):
        if not self.terms:
            return "ExtElement(0)"
        bits = []
        for m in sorted(self.terms):
            labels = "^".join(self.algebra.labels[i]
                              for i in range(self.algebra.n) if m >> i & 1)
            bits.append("%s*%s" % (self.terms[m], labels or "1"))
        return "ExtElement(%s)" % " + ".join(bits)


def ext_scalar(g: LieAlgebra, c) -> ExtElement:
    return ExtElement(g, {0: c} if c else {})


def ext_vector(g: LieAlgebra, coords) -> ExtElement:
    """Grade-one element from coordinates over the algebra basis."""
    if hasattr(coords, "coords"):
        coords = coords.coords
    return ExtElement(g, {1 << i: c for i, c in enumerate(coords) if c})


def basis_wedge(g: LieAlgebra, indices) -> ExtElement:
    """The wedge of basis vectors in the given (ascending) index order."""
    mask = 0
    for i in indices:
        if mask >> i & 1:
            return ExtElement(g, {})
        mask |= 1 << i
    return ExtElement(g, {mask: 1})


# ---------------------------------------------------------------------------
# coboundary


def _basis_coboundaries(g: LieAlgebra):
    cached = g._cache.get("coboundary_basis")
    if cached is not None:
        return cached
    inv = g.gram_inverse()
    duals = [ExtElement(g, {1 << k: inv[i][k] for k in range(g.n) if inv[i][k]})
             for i in range(g.n)]
    dual_pair = {}
    out = []
    for m in range(g.n):
        acc = ExtElement(g, {})
        for i in range(g.n):
            for j in range(i + 1, g.n):
                table = g.structure.get((i, j))
                if not table:
                    continue
                coeff = sum(c * g.killing[m][k] for k, c in table.items())
                if not coeff:
                    continue
                w = dual_pair.get((i, j))
                if w is None:
                    w = duals[i].wedge(duals[j])
                    dual_pair[(i, j)] = w
                acc = acc + (-coeff) * w
        out.append(acc)
    g._cache["coboundary_basis"] = out
    return out


def coboundary(x: LieElement) -> ExtElement:
    """dx in grade two, with (dx, u^v) = -B(x,[u,v]) for all u, v."""
    g = x.algebra
    base = _basis_coboundaries(g)
    acc = ExtElement(g, {})
    for m, c in enumerate(x.coords):
        if c:
            acc = acc + c * base[m]
    return acc


@dataclass
class PowerProfile:
    k_max: int
    witness: ExtElement
    orbit_dim: int
    matches_orbit: bool
    witness_spans_bracket_image: bool


def dx_power_profile(x: LieElement) -> PowerProfile:
    """Largest nonvanishing power of dx, cross-checked against dim [g, x]."""
    g = x.algebra
    dx = coboundary(x)
    k = 0
    power = ext_scalar(g, 1)
    witness = power
    while True:
        nxt = power.wedge(dx)
        if nxt.is_zero():
            break
        k += 1
        power = nxt
        witness = power
        if 2 * k > g.n:
            raise ArithmeticError("dx powers failed to terminate")
    dim = orbit_dim(x)
    matches = (2 * k == dim)
    in_image = _witness_in_bracket_image(g, x, k, witness) if matches else False
    return PowerProfile(k_max=k, witness=witness, orbit_dim=dim,
                        matches_orbit=matches, witness_spans_bracket_image=in_image)


def _witness_in_bracket_image(g: LieAlgebra, x: LieElement, k: int,
                              witness: ExtElement) -> bool:
    if k == 0:
        return True
    ad = g.ad_matrix(x)
    columns = [[ad[row][col] for row in range(g.n)] for col in range(g.n)]
    reduced, _ = linalg.rref(columns)
    if len(reduced) != 2 * k:
        return False
    top = ext_vector(g, reduced[0])
    for v in reduced[1:]:
        top = top.wedge(ext_vector(g, v))
    # witness must be a nonzero scalar multiple of the top wedge of [x, g]
    if set(witness.terms) != set(top.terms):
        return False
    ratio = None
    for m, c in witness.terms.items():
        q = Fraction(c) / Fraction(top.terms[m])
        if ratio is None:
            ratio = q
        elif ratio != q:
            return False
    return ratio is not None and ratio != 0


# ---------------------------------------------------------------------------
# the algebra homomorphism from polynomials


def _gamma_deltas(g: LieAlgebra):
    cached = g._cache.get("gamma_deltas")
    if cached is not None:
        return cached
    base = _basis_coboundaries(g)
    inv = g.gram_inverse()
    out = []
    for j in range(g.n):
        acc = ExtElement(g, {})
        for k in range(g.n):
            if inv[j][k]:
                acc = acc + (-inv[j][k]) * base[k]
        out.append(acc)
    g._cache["gamma_deltas"] = out
    return out


def gamma_hom(g: LieAlgebra, p: Poly) -> ExtElement:
    """The unique algebra homomorphism sending the linear form of x to -dx.

    Degree-k polynomials land in grade 2k.
    """
    ring = PolyRing.for_algebra(g)
    if p.ring is not ring:
        raise ConfigurationError("polynomial belongs to a different ring")
    deltas = _gamma_deltas(g)
    pair_cache = g._cache.setdefault("gamma_delta_pairs", {})
    acc = ExtElement(g, {})
    for m, c in p.terms.items():
        factors = [j for j, e in enumerate(m) for _ in range(e)]
        term = ext_scalar(g, c)
        # multiply δ's pairwise through a cache; grade-2 factors commute
        i = 0
        while i + 1 < len(factors):
            key = (factors[i], factors[i + 1])
            w = pair_cache.get(key)
            if w is None:
                w = deltas[key[0]].wedge(deltas[key[1]])
                pair_cache[key] = w
            term = term.wedge(w)
            i += 2
        if i < len(factors):
            term = term.wedge(deltas[factors[i]])
        acc = acc + term
    return acc


# ---------------------------------------------------------------------------
# pairing


def ext_pairing(u: ExtElement, v: ExtElement):
    """Killing form extended to the exterior algebra by Gram determinants."""
    if u.algebra is not v.algebra:
        raise ConfigurationError("pairing of elements over different algebras")
    g = u.algebra
    det_cache = g._cache.setdefault("ext_gram_dets", {})
    total = Fraction(0)
    v_by_grade = {}
    for t, b in v.terms.items():
        v_by_grade.setdefault(t.bit_count(), []).append((t, b))
    for s, a in u.terms.items():
        grade = s.bit_count()
        rows = [i for i in range(g.n) if s >> i & 1]
        for t, b in v_by_grade.get(grade, ()):
            key = (s, t)
            d = det_cache.get(key)
            if d is None:
                cols = [i for i in range(g.n) if t >> i & 1]
                d = linalg.det([[g.killing[i][j] for j in cols] for i in rows])
                det_cache[key] = d
            if d:
                total += Fraction(a) * Fraction(b) * d
    return total
