"""Ideals in the positive roots, their weights, and Casimir spectra.

An ideal is an upward-closed subset of the positive roots; since the fixed
root order refines height, the enumerator can walk indices downward and
only ever consult already-decided roots.  Weights of same-size ideals are
pairwise distinct dominant weights, the Casimir value on a size-l ideal
weight is exactly l, and in type A the number of size-l ideals is the
partition number of l; all of that is verified here with exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy

from . import linalg
from .errors import BudgetError, ConfigurationError
from .chevalley import LieAlgebra
from .rootdata import RootSystem


@dataclass(frozen=True)
class RootIdeal:
    """An upward-closed set of positive roots with its weight and abelian flag."""

    root_indices: tuple
    weight: tuple
    abelian: bool

    @property
    def size(self) -> int:
        return len(self.root_indices)

    def to_json(self, rs: RootSystem):
        return {
            "roots": [list(rs.positive_roots[i].coords) for i in self.root_indices],
            "weight": list(self.weight),
            "abelian": self.abelian,
        }


def _make_ideal(rs: RootSystem, indices) -> RootIdeal:
    indices = tuple(sorted(indices))
    l = rs.rank
    weight = [0] * l
    for i in indices:
        for j, c in enumerate(rs.positive_roots[i].coords):
            weight[j] += c
    abelian = True
    for a in range(len(indices)):
        for b in range(a + 1, len(indices)):
            if rs.sum_table[(indices[a], indices[b])] is not None:
                abelian = False
                break
        if not abelian:
            break
    return RootIdeal(root_indices=indices, weight=tuple(weight), abelian=abelian)


def is_upward_closed(rs: RootSystem, indices) -> bool:
    chosen = set(indices)
    for i in chosen:
        for j in range(rs.r):
            target = rs.sum_table[(i, j)]
            if target is not None and target not in chosen:
                return False
    return True


def enumerate_ideals(rs: RootSystem, k: int):
    """All upward-closed k-subsets of the positive roots, in a fixed order."""
    if k < 0 or k > rs.r:
        raise ConfigurationError("ideal size must lie in [0, %d]" % rs.r)
    r = rs.r
    up = []
    for i in range(r):
        targets = {rs.sum_table[(i, j)] for j in range(r)}
        targets.discard(None)
        up.append(targets)
    out = []

    def rec(i, chosen, count):
        if count == k and i < 0:
            out.append(_make_ideal(rs, chosen))
            return
        if i < 0 or count > k or count + i + 1 < k:
            return
        # include root i (legal only when everything above it is present)
        if up[i] <= chosen:
            chosen.add(i)
            rec(i - 1, chosen, count + 1)
            chosen.remove(i)
        rec(i - 1, chosen, count)

    rec(r - 1, set(), 0)
    out.sort(key=lambda ideal: ideal.root_indices)
    return out


def enumerate_ideals_brute_force(rs: RootSystem, k: int):
    """Oracle enumerator: filter all k-subsets by the closure condition."""
    out = [_make_ideal(rs, combo)
           for combo in combinations(range(rs.r), k)
           if is_upward_closed(rs, combo)]
    out.sort(key=lambda ideal: ideal.root_indices)
    return out


def partition_count(n: int) -> int:
    """Partition numbers by the Euler pentagonal recurrence (independent counter)."""
    if n < 0:
        raise ConfigurationError("partition_count needs n >= 0")
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            g2 = j * (3 * j + 1) // 2
            if g1 > m and g2 > m:
                break
            sign = 1 if j % 2 else -1
            if g1 <= m:
                total += sign * p[m - g1]
            if g2 <= m:
                total += sign * p[m - g2]
            j += 1
        p[m] = total
    return p[n]


# ---------------------------------------------------------------------------
# weights, the Weyl dimension oracle, Casimir values


def _inner_vec(rs: RootSystem, u, v):
    total = Fraction(0)
    for i, a in enumerate(u):
        if not a:
            continue
        row = rs.gram[i]
        total += Fraction(a) * sum(Fraction(row[j]) * Fraction(b)
                                   for j, b in enumerate(v) if b)
    return total


def _rho_vector(rs: RootSystem):
    l = rs.rank
    rho = [Fraction(0)] * l
    for rt in rs.positive_roots:
        for j, c in enumerate(rt.coords):
            rho[j] += Fraction(c, 2)
    return rho


def coroot_pairings(rs: RootSystem, weight):
    """<weight, alpha_i^vee> for each simple root, as exact rationals."""
    out = []
    for i in range(rs.rank):
        alpha = rs.simple_roots[i].coords
        out.append(2 * _inner_vec(rs, weight, alpha) / rs.gram[i][i])
    return out


def is_dominant(rs: RootSystem, weight) -> bool:
    return all(c >= 0 for c in coroot_pairings(rs, weight))


def weyl_dim(rs: RootSystem, weight) -> int:
    """Weyl dimension formula, product over positive roots; exact."""
    rho = _rho_vector(rs)
    lam_rho = [Fraction(w) + r for w, r in zip(weight, rho)]
    value = Fraction(1)
    for rt in rs.positive_roots:
        num = _inner_vec(rs, lam_rho, rt.coords)
        den = _inner_vec(rs, rho, rt.coords)
        value *= num / den
    if value.denominator != 1 or value <= 0:
        raise ArithmeticError("Weyl dimension came out non-integral: %s" % value)
    return int(value)


def _weight_form(rs: RootSystem, g: LieAlgebra):
    """The Killing-dual form on weight space, cached on the algebra."""
    cached = g._cache.get("weight_form")
    if cached is not None:
        return cached
    l = g.rank
    k_inv = linalg.invert([row[:l] for row in g.killing[:l]])

    def pairings(weight):
        return [sum(Fraction(c) * rs.cartan_matrix[j][i]
                    for j, c in enumerate(weight) if c) for i in range(l)]

    def form(u, v):
        pu, pv = pairings(u), pairings(v)
        total = Fraction(0)
        for i in range(l):
            if pu[i]:
                total += pu[i] * sum(k_inv[i][j] * pv[j] for j in range(l) if pv[j])
        return total

    g._cache["weight_form"] = form
    return form


def casimir_eigenvalue(rs: RootSystem, g: LieAlgebra, weight):
    """(weight, weight + 2 rho) in the form normalized to 1 on the adjoint."""
    pair = coroot_pairings(rs, weight)
    if any(c < 0 for c in pair):
        raise ConfigurationError("weight %s is not dominant" % (weight,))
    form = _weight_form(rs, g)
    if not g._cache.get("casimir_norm_checked"):
        theta = rs.highest_root.coords
        rho = _rho_vector(rs)
        check = form(theta, theta) + 2 * form(theta, rho)
        if check != 1:
            raise ArithmeticError(
                "Casimir normalization failed: adjoint eigenvalue %s" % check)
        g._cache["casimir_norm_checked"] = True
    rho = _rho_vector(rs)
    return form(weight, weight) + 2 * form(weight, rho)


# ---------------------------------------------------------------------------
# theorem-level verification


@dataclass
class IdealTheoremReport:
    cartan_type: str
    rank: int
    ideal_count: int
    all_abelian: bool
    weights_distinct: bool
    weights_dominant: bool
    eigenvalues: list
    eigenvalues_equal_rank: bool
    partition_number: int | None
    partition_match: bool | None

    @property
    def passed(self) -> bool:
        checks = [self.all_abelian, self.weights_distinct, self.weights_dominant,
                  self.eigenvalues_equal_rank]
        if self.partition_match is not None:
            checks.append(self.partition_match)
        return all(checks)


def verify_ideal_theorems(rs: RootSystem, g: LieAlgebra) -> IdealTheoremReport:
    """Size-rank ideals: abelian, distinct dominant weights, Casimir value = rank."""
    l = rs.rank
    ideals = enumerate_ideals(rs, l)
    weights = [ideal.weight for ideal in ideals]
    eigenvalues = [casimir_eigenvalue(rs, g, w) for w in weights]
    partition = partition_count(l) if rs.cartan_type.family == "A" else None
    return IdealTheoremReport(
        cartan_type=str(rs.cartan_type),
        rank=l,
        ideal_count=len(ideals),
        all_abelian=all(ideal.abelian for ideal in ideals),
        weights_distinct=len(set(weights)) == len(weights),
        weights_dominant=all(is_dominant(rs, w) for w in weights),
        eigenvalues=eigenvalues,
        eigenvalues_equal_rank=all(v == l for v in eigenvalues),
        partition_number=partition,
        partition_match=(len(ideals) == partition) if partition is not None else None,
    )


# ---------------------------------------------------------------------------
# the Casimir operator on wedge powers


@dataclass
class WedgeSpectrumReport:
    k: int
    dim: int
    eigenvalue_multiplicity: int
    abelian_ideal_count: int
    ideal_vectors_in_eigenspace: bool
    max_float_eigenvalue: float
    float_bound_ok: bool


def casimir_on_wedge(g: LieAlgebra, k: int, budget: int = 5000):
    """Exact Casimir matrix on the k-th wedge power plus its spectral report.

    The multiplicity of the eigenvalue k is certified exactly (kernel rank
    of Cas - k); the claim that no eigenvalue exceeds k is checked in
    floating point at 1e-9 and reported as informational.
    """
    n = g.n
    if k < 0 or k > n:
        raise ConfigurationError("wedge degree out of range")
    from math import comb
    dim = comb(n, k)
    if dim > budget:
        raise BudgetError("wedge basis of size %d exceeds budget %d" % (dim, budget))
    basis = list(combinations(range(n), k))
    index = {b: i for i, b in enumerate(basis)}

    def action(z_idx):
        """Derivation action of y_z on the wedge basis, column-sparse."""
        cols = {}
        for col, combo in enumerate(basis):
            entries = {}
            for t, m in enumerate(combo):
                table = g.structure.get((z_idx, m))
                if not table:
                    continue
                rest = combo[:t] + combo[t + 1:]
                for target, c in table.items():
                    if target in rest:
                        continue
                    pos = 0
                    while pos < len(rest) and rest[pos] < target:
                        pos += 1
                    new = rest[:pos] + (target,) + rest[pos:]
                    sign = -1 if (pos - t) % 2 else 1
                    row = index[new]
                    entries[row] = entries.get(row, 0) + sign * c
            cols[col] = {rw: v for rw, v in entries.items() if v}
        return cols

    actions = [action(z) for z in range(n)]
    inv = g.gram_inverse()
    cas = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(n):
        # rho(y^i) assembled from the dual basis, then composed with rho(y_i)
        dual_cols = {}
        for j in range(n):
            cij = inv[i][j]
            if not cij:
                continue
            for col, entries in actions[j].items():
                acc = dual_cols.setdefault(col, {})
                for row, v in entries.items():
                    acc[row] = acc.get(row, 0) + cij * v
        act_i = actions[i]
        for col, entries in dual_cols.items():
            for mid, v in entries.items():
                upper = act_i.get(mid)
                if not upper:
                    continue
                for row, w in upper.items():
                    cas[row][col] += v * w

    shifted = [[cas[i][j] - (k if i == j else 0) for j in range(dim)]
               for i in range(dim)]
    multiplicity = dim - linalg.rank(shifted)

    if k <= g.rootsys.r:
        ideals = [ideal for ideal in enumerate_ideals(g.rootsys, k) if ideal.abelian]
    else:
        ideals = []
    members_ok = True
    for ideal in ideals:
        combo = tuple(sorted(g.e_index(i) for i in ideal.root_indices))
        col = index[combo]
        column_ok = all(shifted[row][col] == 0 for row in range(dim))
        members_ok = members_ok and column_ok

    floats = numpy.array([[float(x) for x in row] for row in cas])
    eigs = numpy.linalg.eigvals(floats)
    max_eig = float(numpy.max(eigs.real)) if dim else float("-inf")
    report = WedgeSpectrumReport(
        k=k, dim=dim,
        eigenvalue_multiplicity=multiplicity,
        abelian_ideal_count=len(ideals),
        ideal_vectors_in_eigenspace=members_ok,
        max_float_eigenvalue=max_eig,
        float_bound_ok=bool(max_eig <= k + 1e-9),
    )
    return cas, report


def rk_dimension_bridge(g: LieAlgebra) -> dict:
    """dim R^r(g) against the sum of Weyl dimensions over size-rank ideals."""
    from .gammamap import rk_space
    rs = g.rootsys
    ideals = enumerate_ideals(rs, rs.rank)
    dims = [weyl_dim(rs, ideal.weight) for ideal in ideals]
    space = rk_space(g, g.r)
    return {
        "rk_dim": space.dim,
        "weyl_dims": dims,
        "weyl_total": sum(dims),
        "match": space.dim == sum(dims),
    }
