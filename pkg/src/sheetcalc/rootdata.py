"""Root systems for the classical families A, B, C, D.

Positive roots are generated by string-closure from the simple roots, not
read off hard-coded tables, so the same code path serves every family and
can be checked against the closed-form counts.  The positive roots carry a
fixed well order (height, then lexicographic on coordinates) that every
downstream sign convention hangs off.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError

FAMILIES = ("A", "B", "C", "D")

#: Default inclusive bound on the rank; keeps wedge bases and minor
#: enumerations at desk scale.  Override per call or via the CLI env var.
DEFAULT_MAX_RANK = 6


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(
                "unsupported family %r (supported: %s)" % (self.family, ", ".join(FAMILIES)))
        if self.rank < 1:
            raise ConfigurationError("rank must be >= 1, got %d" % self.rank)
        if self.family == "D" and self.rank < 2:
            raise ConfigurationError("family D needs rank >= 2, got %d" % self.rank)

    def __str__(self):
        return "%s%d" % (self.family, self.rank)


def parse_cartan_type(text: str) -> CartanType:
    """Parse strings like "A2", "b3", "D4" (case-insensitive)."""
    m = re.fullmatch(r"\s*([a-dA-D])\s*(\d+)\s*", text)
    if not m:
        raise ConfigurationError("cannot parse Cartan type from %r" % (text,))
    return CartanType(m.group(1).upper(), int(m.group(2)))


@dataclass(frozen=True)
class Root:
    """A root written over the simple roots; all coords share one sign."""

    coords: tuple

    @property
    def height(self) -> int:
        return sum(self.coords)

    @property
    def is_positive(self) -> bool:
        return self.height > 0

    def __neg__(self):
        return Root(tuple(-c for c in self.coords))

    def __add__(self, other):
        return Root(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"


def _simple_root_gram(t: CartanType):
    """Inner products (alpha_i, alpha_j); long roots are normalized to norm 2."""
    l = t.rank
    g = [[0] * l for _ in range(l)]
    for i in range(l):
        g[i][i] = 2
    if t.family == "A":
        for i in range(l - 1):
            g[i][i + 1] = g[i + 1][i] = -1
    elif t.family == "B":
        g[l - 1][l - 1] = 1
        for i in range(l - 1):
            g[i][i + 1] = g[i + 1][i] = -1
    elif t.family == "C":
        g[l - 1][l - 1] = 4
        for i in range(l - 2):
            g[i][i + 1] = g[i + 1][i] = -1
        if l >= 2:
            g[l - 2][l - 1] = g[l - 1][l - 2] = -2
    else:  # D
        for i in range(l - 2):
            g[i][i + 1] = g[i + 1][i] = -1
        if l >= 3:
            g[l - 3][l - 1] = g[l - 1][l - 3] = -1
    return g


def positive_root_count(t: CartanType) -> int:
    """Closed-form count of positive roots, used as an oracle for closure."""
    l = t.rank
    if t.family == "A":
        return l * (l + 1) // 2
    if t.family in ("B", "C"):
        return l * l
    return l * (l - 1)


def exponents(t: CartanType):
    """The exponents m_1 <= ... <= m_l (degrees of basic invariants minus 1)."""
    l = t.rank
    if t.family == "A":
        return tuple(range(1, l + 1))
    if t.family in ("B", "C"):
        return tuple(range(1, 2 * l, 2))
    return tuple(sorted(list(range(1, 2 * l - 2, 2)) + [l - 1]))


class RootSystem:
    """A built root system: ordered positive roots plus lookup tables."""

    def __init__(self, cartan_type, simple_roots, positive_roots, cartan_matrix, gram):
        self.cartan_type = cartan_type
        self.simple_roots = simple_roots
        self.positive_roots = positive_roots
        self.cartan_matrix = cartan_matrix
        self.gram = gram
        self.rank = cartan_type.rank
        self.r = len(positive_roots)
        self.n = self.rank + 2 * self.r
        self.exponents = exponents(cartan_type)
        self._index = {rt.coords: k for k, rt in enumerate(positive_roots)}
        self.sum_table = {}
        for i, phi in enumerate(positive_roots):
            for j, psi in enumerate(positive_roots):
                self.sum_table[(i, j)] = self._index.get((phi + psi).coords)

    def index(self, root: Root):
        """Index of a positive root in the fixed order, else None."""
        return self._index.get(root.coords)

    def inner(self, phi: Root, psi: Root):
        """W-invariant inner product, long roots of norm 2."""
        total = 0
        for i, a in enumerate(phi.coords):
            if not a:
                continue
            row = self.gram[i]
            total += a * sum(row[j] * b for j, b in enumerate(psi.coords) if b)
        return total

    def coroot_pairing(self, phi: Root, i: int):
        """<phi, alpha_i^vee> = 2 (phi, alpha_i) / (alpha_i, alpha_i)."""
        num = 2 * self.inner(phi, self.simple_roots[i])
        den = self.gram[i][i]
        q, rem = divmod(num, den)
        if rem:
            raise ArithmeticError("non-integral Cartan pairing for %s" % (phi,))
        return q

    def coroot_coefficients(self, phi: Root):
        """Integer coefficients k_i with phi^vee = sum k_i alpha_i^vee."""
        norm = self.inner(phi, phi)
        out = []
        for i, c in enumerate(phi.coords):
            num = c * self.gram[i][i]
            q, rem = divmod(num, norm)
            if rem:
                raise ArithmeticError("non-integral coroot for %s" % (phi,))
            out.append(q)
        return tuple(out)

    @property
    def highest_root(self) -> Root:
        return self.positive_roots[-1]

    def describe(self) -> dict:
        return {
            "type": str(self.cartan_type),
            "rank": self.rank,
            "positive_roots": self.r,
            "dimension": self.n,
            "exponents": list(self.exponents),
        }


def build_root_system(t: CartanType, *, allow_low_rank_d: bool = False,
                      max_rank: int | None = None) -> RootSystem:
    """Generate the full root system for a classical Cartan type."""
    bound = DEFAULT_MAX_RANK if max_rank is None else max_rank
    if t.rank > bound:
        raise ConfigurationError(
            "rank %d exceeds the configured bound %d" % (t.rank, bound))
    if t.family == "D" and t.rank < 4 and not allow_low_rank_d:
        raise ConfigurationError(
            "D%d is a low-rank alias (D2=A1+A1, D3=A3); pass allow_low_rank_d=True "
            "to build it anyway" % t.rank)

    l = t.rank
    gram = _simple_root_gram(t)
    cartan = [[2 * gram[i][j] // gram[j][j] for j in range(l)] for i in range(l)]
    simple = [Root(tuple(int(i == j) for j in range(l))) for i in range(l)]

    known = {rt.coords for rt in simple}
    by_height = {1: [rt.coords for rt in simple]}
    h = 1
    while by_height.get(h):
        nxt = []
        for coords in by_height[h]:
            for i in range(l):
                unit = simple[i].coords
                if coords == unit:
                    continue  # 2*alpha_i is never a root
                # p = how far the alpha_i-string continues below coords
                p = 0
                cur = tuple(a - b for a, b in zip(coords, unit))
                while cur in known:
                    p += 1
                    cur = tuple(a - b for a, b in zip(cur, unit))
                pairing = sum(c * cartan[j][i] for j, c in enumerate(coords) if c)
                if p - pairing > 0:
                    new = tuple(a + b for a, b in zip(coords, unit))
                    if new not in known:
                        known.add(new)
                        nxt.append(new)
        h += 1
        if nxt:
            by_height[h] = nxt

    positives = sorted((Root(c) for c in known),
                       key=lambda rt: (rt.height, rt.coords))
    rs = RootSystem(t, simple, positives, cartan, gram)
    expected = positive_root_count(t)
    if rs.r != expected:
        raise ArithmeticError(
            "closure produced %d positive roots for %s, expected %d"
            % (rs.r, t, expected))
    if sum(rs.exponents) != rs.r:
        raise ArithmeticError("exponent sum does not match root count for %s" % t)
    return rs
