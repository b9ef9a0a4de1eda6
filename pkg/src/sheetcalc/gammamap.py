"""The matching-sum map from even wedges to harmonic polynomials.

A wedge x_1 ^ ... ^ x_2k goes to the sum, over all partitions of the 2k
slots into ordered pairs, of the signed product of the bracket linear
forms B([x_a, x_b], .).  The cross-section of pair partitions is realized
canonically (first members ascending, each pair ascending) and each
partition carries the sign of its flattened permutation; flipping a pair
flips both the sign and the bracket, so the signed sum matches the
normalized cross-section where every representative is even.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ConfigurationError
from .chevalley import LieAlgebra, LieElement, orbit_dim
from .polyring import Poly, PolyRing, PolySpace

_matching_cache = {}


@dataclass(frozen=True)
class Matching:
    """A partition of {1..2k} into k ordered pairs, canonically ordered."""

    pairs: tuple
    sign: int


def _perm_sign(seq) -> int:
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return -1 if inversions & 1 else 1


def iter_matchings(k: int):
    """Lazily yield the (2k-1)!! canonical pair partitions of {1..2k}.

    Pairs are ascending and sorted by first member; the sign of the
    flattened permutation is tracked incrementally (pairing the minimum
    with the idx-th remaining element adds idx-1 inversions).
    """
    if k < 0:
        raise ConfigurationError("k must be nonnegative")

    def rec(remaining, acc, sign):
        if not remaining:
            yield Matching(pairs=tuple(acc), sign=sign)
            return
        first = remaining[0]
        for idx in range(1, len(remaining)):
            partner = remaining[idx]
            acc.append((first, partner))
            yield from rec(remaining[1:idx] + remaining[idx + 1:], acc,
                           sign if (idx - 1) % 2 == 0 else -sign)
            acc.pop()

    yield from rec(tuple(range(1, 2 * k + 1)), [], 1)


def enumerate_matchings(k: int):
    """All canonical pair partitions, materialized and cached for small k."""
    cached = _matching_cache.get(k)
    if cached is not None:
        return cached
    result = tuple(iter_matchings(k))
    if k <= 6:
        _matching_cache[k] = result
    return result


def _bracket_form_table(g: LieAlgebra):
    """linear_form([y_i, y_j]) for basis pairs i < j, cached on the algebra."""
    table = g._cache.get("bracket_forms")
    if table is None:
        ring = PolyRing.for_algebra(g)
        table = {}
        for i in range(g.n):
            for j in range(i + 1, g.n):
                br = g.bracket_basis(i, j)
                if br:
                    coords = [0] * g.n
                    for m, c in br.items():
                        coords[m] = c
                    table[(i, j)] = ring.linear_form(coords)
        g._cache["bracket_forms"] = table
    return table


def gamma_map(g: LieAlgebra, xs) -> Poly:
    """Image of x_1 ^ ... ^ x_2k as a degree-k polynomial (scale fixed to 1)."""
    xs = list(xs)
    if len(xs) % 2:
        raise ConfigurationError("gamma_map needs an even number of elements")
    ring = PolyRing.for_algebra(g)
    k = len(xs) // 2
    if k == 0:
        return ring.one()
    forms = {}
    for a in range(2 * k):
        for b in range(a + 1, 2 * k):
            forms[(a, b)] = ring.linear_form(g.bracket(xs[a], xs[b]))
    total = ring.zero()
    for m in enumerate_matchings(k):
        prod = ring.constant(m.sign)
        for a, b in m.pairs:
            f = forms[(a - 1, b - 1)]
            if f.is_zero():
                prod = None
                break
            prod = prod * f
        if prod is not None:
            total = total + prod
    return total


def gamma_map_basis(g: LieAlgebra, indices) -> Poly:
    """gamma_map on a wedge of basis vectors, through the cached bracket forms."""
    ring = PolyRing.for_algebra(g)
    idx = list(indices)
    k = len(idx) // 2
    if len(idx) % 2:
        raise ConfigurationError("gamma_map needs an even number of elements")
    if k == 0:
        return ring.one()
    table = _bracket_form_table(g)

    def form(a, b):
        i, j = idx[a - 1], idx[b - 1]
        if i == j:
            return None
        if i < j:
            return table.get((i, j))
        f = table.get((j, i))
        return None if f is None else -1 * f

    total = ring.zero()
    for m in enumerate_matchings(k):
        prod = ring.constant(m.sign)
        for a, b in m.pairs:
            f = form(a, b)
            if f is None:
                prod = None
                break
            prod = prod * f
        if prod is not None:
            total = total + prod
    return total


def rk_space(g: LieAlgebra, k: int) -> PolySpace:
    """Span of the matching-sum images of all basis wedges of grade 2k."""
    if k < 0 or 2 * k > g.n:
        ring = PolyRing.for_algebra(g)
        return PolySpace(ring, [], degree=k if k >= 0 else None)
    key = ("rk_space", k)
    cached = g._cache.get(key)
    if cached is None:
        ring = PolyRing.for_algebra(g)
        polys = [gamma_map_basis(g, combo)
                 for combo in combinations(range(g.n), 2 * k)]
        cached = PolySpace.from_polys(ring, polys, degree=k)
        g._cache[key] = cached
    return cached


@dataclass
class VarietyOutcome:
    stratum: int
    vanishes: bool
    expected_vanish: bool

    @property
    def ok(self) -> bool:
        return self.vanishes == self.expected_vanish


@dataclass
class VarietyReport:
    k: int
    dim: int
    outcomes: list
    violations: list

    @property
    def passed(self) -> bool:
        return not self.violations


def variety_check(g: LieAlgebra, k: int, samples) -> VarietyReport:
    """Check the sheet characterization of the vanishing locus on samples.

    Elements with orbit dimension < 2k must kill every basis polynomial;
    everything else must leave at least one basis polynomial nonzero.
    """
    space = rk_space(g, k)
    outcomes = []
    violations = []
    for x in samples:
        dim = orbit_dim(x)
        vanishes = all(p.evaluate(x.coords) == 0 for p in space.basis)
        expected = dim < 2 * k
        outcome = VarietyOutcome(stratum=dim, vanishes=vanishes, expected_vanish=expected)
        outcomes.append(outcome)
        if not outcome.ok:
            violations.append((x, outcome))
    return VarietyReport(k=k, dim=space.dim, outcomes=outcomes, violations=violations)
