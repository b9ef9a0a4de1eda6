"""Standard polynomial identities on matrix algebras.

The alternating sum over all k! orderings is evaluated on a lexicographic
permutation tree with shared prefix products, which drops the naive
O(k! k) matrix multiplications to about 1.72 k!.  Everything is exact;
trial counts control coverage, never precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .errors import BudgetError, ConfigurationError, RepresentationError
from .linalg import Mat
from .chevalley import LieAlgebra, regular_nilpotent
from .invariants import MatrixRep, defining_rep
from .rootdata import build_root_system, parse_cartan_type

MAX_IDENTITY_DEGREE = 10


def std_identity(mats, max_degree: int = MAX_IDENTITY_DEGREE) -> Mat:
    """Alternating sum of all products of the given square matrices."""
    k = len(mats)
    if k < 1:
        raise ConfigurationError("need at least one matrix")
    if k > max_degree:
        raise BudgetError(
            "identity degree %d exceeds the budget %d (k! blow-up)" % (k, max_degree))
    shape = mats[0].shape
    if shape[0] != shape[1] or any(m.shape != shape for m in mats):
        raise ConfigurationError("matrices must be square and of equal size")
    n = shape[0]
    acc = [[0] * n for _ in range(n)]

    def rec(prefix, remaining, sign):
        if not remaining:
            rows = prefix.rows
            for i in range(n):
                acc_i = acc[i]
                row = rows[i]
                for j in range(n):
                    acc_i[j] += sign * row[j]
            return
        for pos in range(len(remaining)):
            idx = remaining[pos]
            nxt = mats[idx] if prefix is None else prefix @ mats[idx]
            rec(nxt, remaining[:pos] + remaining[pos + 1:],
                sign if pos % 2 == 0 else -sign)

    rec(None, tuple(range(k)), 1)
    return Mat(acc)


def std_identity_naive(mats) -> Mat:
    """Reference expansion over itertools.permutations; the test oracle."""
    from itertools import permutations
    k = len(mats)
    n = mats[0].shape[0]
    acc = Mat.zeros(n)
    for perm in permutations(range(k)):
        inv = sum(1 for i in range(k) for j in range(i + 1, k) if perm[i] > perm[j])
        prod = mats[perm[0]]
        for idx in perm[1:]:
            prod = prod @ mats[idx]
        acc = acc + (1 if inv % 2 == 0 else -1) * prod
    return acc


def nilpotency_index(m: Mat, bound: int) -> int:
    """Least k with m^k = 0; raises if m is not nilpotent within the bound."""
    k = 1
    cur = m
    while not cur.is_zero():
        cur = cur @ m
        k += 1
        if k > bound:
            raise RepresentationError("matrix is not nilpotent")
    return k


def epsilon(rep: MatrixRep) -> int:
    """Maximal nilpotency index of the representation on nilpotent witnesses.

    Uses the principal nilpotent, whose orbit is dense in the nilcone, and
    cross-checks every root vector; the maximum over all witnesses is
    returned.
    """
    g = rep.algebra
    e = regular_nilpotent(g)
    best = nilpotency_index(rep.apply(e), rep.dim + 1)
    for k in range(g.r):
        for idx in (g.e_index(k), g.f_index(k)):
            best = max(best, nilpotency_index(rep.mats[idx], rep.dim + 1))
    return best


# ---------------------------------------------------------------------------
# randomized verification


def random_rational_matrix(rng, n: int) -> Mat:
    return Mat([[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)])


def random_skew_matrix(rng, n: int) -> Mat:
    m = Mat.zeros(n)
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-9, 9)
            m.rows[i][j] = v
            m.rows[j][i] = -v
    return m


def matrix_units(n: int):
    units = []
    for i in range(n):
        for j in range(n):
            m = Mat.zeros(n)
            m.rows[i][j] = 1
            units.append(m)
    return units


@dataclass
class IdentityCase:
    name: str
    degree: int
    trials: int
    failures: int
    exhaustive_tuples: int = 0
    lower_degree_nonzero: bool | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class StandardIdentityReport:
    seed: int
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)


def check_full_matrix_identity(n: int, trials: int, seed: int,
                               exhaustive_units: bool | None = None) -> IdentityCase:
    """Degree-2n identity on all of M(n), with random and unit-tuple coverage."""
    degree = 2 * n
    rng = random.Random("al1:%d:%d" % (n, seed))
    failures = 0
    exhaustive = 0
    if exhaustive_units is None:
        exhaustive_units = n <= 3
    if exhaustive_units:
        units = matrix_units(n)
        for combo in combinations(units, degree):
            exhaustive += 1
            if not std_identity(list(combo)).is_zero():
                failures += 1
    for _ in range(trials):
        mats = [random_rational_matrix(rng, n) for _ in range(degree)]
        if not std_identity(mats).is_zero():
            failures += 1
    lower = None
    if degree - 1 <= MAX_IDENTITY_DEGREE:
        lower = False
        for _ in range(min(trials, 20)):
            mats = [random_rational_matrix(rng, n) for _ in range(degree - 1)]
            if not std_identity(mats).is_zero():
                lower = True
                break
    return IdentityCase(name="full M(%d)" % n, degree=degree, trials=trials,
                        failures=failures, exhaustive_tuples=exhaustive,
                        lower_degree_nonzero=lower)


def check_skew_identity(n: int, trials: int, seed: int) -> IdentityCase:
    """Degree-(2n-2) identity on skew-symmetric n x n matrices (n even)."""
    if n % 2:
        raise ConfigurationError("the skew identity concerns so(n) with n even")
    degree = 2 * n - 2
    rng = random.Random("al2:%d:%d" % (n, seed))
    failures = 0
    for _ in range(trials):
        mats = [random_skew_matrix(rng, n) for _ in range(degree)]
        if not std_identity(mats).is_zero():
            failures += 1
    return IdentityCase(name="skew %dx%d" % (n, n), degree=degree,
                        trials=trials, failures=failures)


def check_rep_identity(g: LieAlgebra, rep: MatrixRep, trials: int, seed: int) -> IdentityCase:
    """Degree-2*epsilon identity on images of arbitrary algebra elements."""
    eps = epsilon(rep)
    degree = 2 * eps
    rng = random.Random("al3:%s:%d" % (g.rootsys.cartan_type, seed))
    failures = 0
    for _ in range(trials):
        mats = [rep.apply([rng.randint(-9, 9) for _ in range(g.n)])
                for _ in range(degree)]
        if not std_identity(mats).is_zero():
            failures += 1
    lower = False
    for _ in range(min(trials, 20)):
        mats = [rep.apply([rng.randint(-9, 9) for _ in range(g.n)])
                for _ in range(degree - 1)]
        if not std_identity(mats).is_zero():
            lower = True
            break
    return IdentityCase(name="rep images %s (eps=%d)" % (g.rootsys.cartan_type, eps),
                        degree=degree, trials=trials, failures=failures,
                        lower_degree_nonzero=lower)


def verify_standard_theorems(full_sizes=(2, 3), skew_sizes=(2, 4),
                             rep_types=("A2", "D2"), trials: int = 50,
                             seed: int = 0) -> StandardIdentityReport:
    """Run the three identity families over the configured cases."""
    report = StandardIdentityReport(seed=seed)
    for n in full_sizes:
        report.cases.append(check_full_matrix_identity(n, trials, seed))
    for n in skew_sizes:
        report.cases.append(check_skew_identity(n, trials, seed))
    for name in rep_types:
        t = parse_cartan_type(name)
        rs = build_root_system(t, allow_low_rank_d=True)
        from .chevalley import build_lie_algebra
        g = build_lie_algebra(rs)
        rep = defining_rep(g)
        report.cases.append(check_rep_identity(g, rep, trials, seed))
    return report
