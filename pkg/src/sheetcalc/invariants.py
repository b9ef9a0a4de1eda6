"""Basic invariants of the classical algebras and the Jacobian construction.

Generators of the invariant ring come from trace powers of the generic
matrix in the defining representation (plus the Pfaffian for type D).  The
raw trace powers are then corrected modulo products of lower generators so
that every entry of the Jacobian matrix is harmonic; the correction is
found by exact linear solve and is a no-op whenever the raw powers already
work.  Row i of the Jacobian spans a copy of the adjoint representation;
the spans of its maximal minors give the top harmonic space a second,
independent construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import ConfigurationError, GeneratorConstructionError, RepresentationError
from .linalg import Mat
from .chevalley import LieAlgebra, regular_nilpotent
from .gammamap import enumerate_matchings
from .polyring import Poly, PolyRing, PolySpace, is_harmonic, lie_derivative


@dataclass
class MatrixRep:
    """A matrix representation given by one image per algebra basis vector."""

    algebra: LieAlgebra
    dim: int
    mats: list

    def apply(self, x) -> Mat:
        coords = x.coords if hasattr(x, "coords") else x
        acc = Mat.zeros(self.dim)
        for j, c in enumerate(coords):
            if c:
                acc = acc + c * self.mats[j]
        return acc

    def verify_homomorphism(self) -> int:
        """Check bracket compatibility on every basis pair; returns pair count."""
        g = self.algebra
        checked = 0
        for i in range(g.n):
            for j in range(i + 1, g.n):
                checked += 1
                lhs = self.mats[i].commutator(self.mats[j])
                rhs = Mat.zeros(self.dim)
                for k, c in g.bracket_basis(i, j).items():
                    rhs = rhs + c * self.mats[k]
                if lhs != rhs:
                    raise RepresentationError(
                        "bracket mismatch at basis pair (%d, %d)" % (i, j))
        return checked


def _unit(n, i, j):
    m = Mat.zeros(n)
    m.rows[i][j] = 1
    return m


def _simple_triples(g: LieAlgebra):
    """(e_i, f_i, h_i) matrices of the simple generators in the defining rep."""
    fam = g.rootsys.cartan_type.family
    l = g.rank
    triples = []
    if fam == "A":
        n = l + 1
        for i in range(l):
            e = _unit(n, i, i + 1)
            f = _unit(n, i + 1, i)
            h = _unit(n, i, i) - _unit(n, i + 1, i + 1)
            triples.append((e, f, h))
    elif fam == "B":
        n = 2 * l + 1
        z = 2 * l
        for i in range(l - 1):
            e = _unit(n, i, i + 1) - _unit(n, l + i + 1, l + i)
            f = _unit(n, i + 1, i) - _unit(n, l + i, l + i + 1)
            h = (_unit(n, i, i) - _unit(n, l + i, l + i)
                 - _unit(n, i + 1, i + 1) + _unit(n, l + i + 1, l + i + 1))
            triples.append((e, f, h))
        i = l - 1  # the short simple root
        e = _unit(n, i, z) - _unit(n, z, l + i)
        f = -2 * (_unit(n, l + i, z) - _unit(n, z, i))
        h = 2 * (_unit(n, i, i) - _unit(n, l + i, l + i))
        triples.append((e, f, h))
    elif fam == "C":
        n = 2 * l
        for i in range(l - 1):
            e = _unit(n, i, i + 1) - _unit(n, l + i + 1, l + i)
            f = _unit(n, i + 1, i) - _unit(n, l + i, l + i + 1)
            h = (_unit(n, i, i) - _unit(n, l + i, l + i)
                 - _unit(n, i + 1, i + 1) + _unit(n, l + i + 1, l + i + 1))
            triples.append((e, f, h))
        i = l - 1  # the long simple root 2 e_l
        e = _unit(n, i, l + i)
        f = _unit(n, l + i, i)
        h = _unit(n, i, i) - _unit(n, l + i, l + i)
        triples.append((e, f, h))
    else:  # D
        n = 2 * l
        for i in range(l - 1):
            e = _unit(n, i, i + 1) - _unit(n, l + i + 1, l + i)
            f = _unit(n, i + 1, i) - _unit(n, l + i, l + i + 1)
            h = (_unit(n, i, i) - _unit(n, l + i, l + i)
                 - _unit(n, i + 1, i + 1) + _unit(n, l + i + 1, l + i + 1))
            triples.append((e, f, h))
        a, b = l - 2, l - 1  # the fork root e_{l-1} + e_l
        e = _unit(n, a, l + b) - _unit(n, b, l + a)
        f = _unit(n, l + b, a) - _unit(n, l + a, b)
        h = (_unit(n, a, a) - _unit(n, l + a, l + a)
             + _unit(n, b, b) - _unit(n, l + b, l + b))
        triples.append((e, f, h))
    return triples


def _orthogonal_form(g: LieAlgebra):
    """Matrix of the bilinear form preserved by the B/D defining realization."""
    fam = g.rootsys.cartan_type.family
    l = g.rank
    if fam == "B":
        n = 2 * l + 1
        form = Mat.zeros(n)
        for i in range(l):
            form.rows[i][l + i] = 1
            form.rows[l + i][i] = 1
        form.rows[2 * l][2 * l] = 1
        return form
    if fam == "D":
        n = 2 * l
        form = Mat.zeros(n)
        for i in range(l):
            form.rows[i][l + i] = 1
            form.rows[l + i][i] = 1
        return form
    raise ConfigurationError("no orthogonal form for family %s" % fam)


def defining_rep(g: LieAlgebra) -> MatrixRep:
    """The defining matrix realization, extended from the simple generators.

    Non-simple root vectors are produced by the same iterated brackets that
    define them in the abstract algebra, so the matrix images share the
    abstract structure constants exactly; the homomorphism property is
    verified on every basis pair before returning.
    """
    cached = g._cache.get("defining_rep")
    if cached is not None:
        return cached
    rs = g.rootsys
    triples = _simple_triples(g)
    n_rep = triples[0][0].shape[0]
    mats = [None] * g.n
    for i in range(g.rank):
        e, f, h = triples[i]
        mats[g.h_index(i)] = h
        k = rs.index(rs.simple_roots[i])
        mats[g.e_index(k)] = e
        mats[g.f_index(k)] = f
    for idx, chi in enumerate(rs.positive_roots):
        if chi.height == 1:
            continue
        for a_idx, phi in enumerate(rs.positive_roots):
            b = rs.index(chi + (-phi))
            if b is None or b <= a_idx:
                continue
            ia, ib, ichi = g.e_index(a_idx), g.e_index(b), g.e_index(idx)
            const = g.bracket_basis(ia, ib).get(ichi)
            if not const:
                continue
            mats[ichi] = Fraction(1, const) * mats[ia].commutator(mats[ib])
            ja, jb, jchi = g.f_index(a_idx), g.f_index(b), g.f_index(idx)
            const_neg = g.bracket_basis(ja, jb).get(jchi)
            mats[jchi] = Fraction(1, const_neg) * mats[ja].commutator(mats[jb])
            break
        if mats[g.e_index(idx)] is None:
            raise RepresentationError("no decomposition found for %s" % (chi,))
    rep = MatrixRep(algebra=g, dim=n_rep, mats=mats)
    rep.verify_homomorphism()
    g._cache["defining_rep"] = rep
    return rep


def adjoint_rep(g: LieAlgebra) -> MatrixRep:
    mats = [Mat(g.ad_matrix(g.basis_element(i))) for i in range(g.n)]
    return MatrixRep(algebra=g, dim=g.n, mats=mats)


# ---------------------------------------------------------------------------
# generic matrices and their invariants


def generic_matrix(rep: MatrixRep, dual: bool = False):
    """N x N matrix of linear polynomials: the coordinates contracted with rep images.

    With dual=True the contraction runs over the Killing-dual basis, which
    rewrites every resulting invariant for direct use as a differential
    operator.
    """
    g = rep.algebra
    ring = PolyRing.for_algebra(g)
    n_rep = rep.dim
    entries = [[ring.zero() for _ in range(n_rep)] for _ in range(n_rep)]
    inv = g.gram_inverse() if dual else None
    for j in range(g.n):
        if dual:
            mat = Mat.zeros(n_rep)
            for k in range(g.n):
                if inv[j][k]:
                    mat = mat + inv[j][k] * rep.mats[k]
        else:
            mat = rep.mats[j]
        coord = ring.coordinate(j)
        for r in range(n_rep):
            for c in range(n_rep):
                if mat.rows[r][c]:
                    entries[r][c] = entries[r][c] + mat.rows[r][c] * coord
    return entries


def _poly_mat_mul(a, b):
    n = len(a)
    m = len(b[0])
    inner = len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = None
            for k in range(inner):
                if a[i][k].is_zero() or b[k][j].is_zero():
                    continue
                term = a[i][k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None else a[0][0].ring.zero())
        out.append(row)
    return out


def _poly_trace(mat):
    acc = mat[0][0].ring.zero()
    for i in range(len(mat)):
        acc = acc + mat[i][i]
    return acc


def trace_powers(x_mat, degrees):
    """tr(X^d) for each requested degree, sharing intermediate powers."""
    out = {}
    top = max(degrees)
    power = x_mat
    d = 1
    while d < top:
        power = _poly_mat_mul(power, x_mat)
        d += 1
        if d in degrees:
            out[d] = _poly_trace(power)
    return out


def pfaffian(skew):
    """Pfaffian of a skew matrix of polynomials, by perfect-matching expansion."""
    n = len(skew)
    if n % 2:
        raise ConfigurationError("Pfaffian needs even size")
    ring = skew[0][0].ring
    total = ring.zero()
    for m in enumerate_matchings(n // 2):
        prod = ring.constant(m.sign)
        for a, b in m.pairs:
            entry = skew[a - 1][b - 1]
            if entry.is_zero():
                prod = None
                break
            prod = prod * entry
        if prod is not None:
            total = total + prod
    return total


@dataclass
class GeneratorSet:
    """Adjusted basic invariants plus their Killing-dual rewrites."""

    algebra: LieAlgebra
    polys: list
    duals: list
    degrees: list

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)


def _raw_generators(g: LieAlgebra):
    fam = g.rootsys.cartan_type.family
    l = g.rank
    rep = defining_rep(g)
    x = generic_matrix(rep)
    x_dual = generic_matrix(rep, dual=True)
    if fam == "A":
        degrees = list(range(2, l + 2))
    elif fam in ("B", "C"):
        degrees = list(range(2, 2 * l + 1, 2))
    else:
        degrees = list(range(2, 2 * l - 1, 2))
    traces = trace_powers(x, set(degrees))
    traces_dual = trace_powers(x_dual, set(degrees))
    gens = [(d, traces[d], traces_dual[d]) for d in degrees]
    if fam == "D":
        form = _orthogonal_form(g)
        skew = _form_times(form, x)
        skew_dual = _form_times(form, x_dual)
        gens.append((l, pfaffian(skew), pfaffian(skew_dual)))
        gens.sort(key=lambda t: t[0])
    return gens


def _form_times(form: Mat, poly_mat):
    ring = poly_mat[0][0].ring
    n = len(poly_mat)
    out = [[ring.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            c = form.rows[i][k]
            if c:
                for j in range(n):
                    if not poly_mat[k][j].is_zero():
                        out[i][j] = out[i][j] + c * poly_mat[k][j]
    return out


def _correction_monomials(degrees, target):
    """Exponent vectors beta over previous generators with sum(beta_j d_j) = target.

    Includes single lower-index generators of the same degree (a triangular
    change of generators) and all products of strictly smaller degrees.
    """
    out = []

    def rec(pos, remaining, beta):
        if remaining == 0:
            total = sum(beta)
            if total >= 2 or (total == 1 and degrees[beta.index(1)] == target):
                out.append(tuple(beta))
            return
        if pos == len(degrees):
            return
        max_e = remaining // degrees[pos]
        for e in range(max_e + 1):
            beta.append(e)
            rec(pos + 1, remaining - e * degrees[pos], beta)
            beta.pop()

    rec(0, target, [])
    return out


def chevalley_generators(g: LieAlgebra) -> GeneratorSet:
    """Basic invariants with all Jacobian entries harmonic.

    Degrees are the exponents plus one; each generator is checked to be
    killed by the coadjoint action of every basis element, and the whole
    set is checked for algebraic independence through the Jacobian rank at
    a regular element.
    """
    cached = g._cache.get("chevalley_generators")
    if cached is not None:
        return cached
    ring = PolyRing.for_algebra(g)
    raw = _raw_generators(g)
    degrees = [d for d, _, _ in raw]
    if tuple(sorted(m + 1 for m in g.rootsys.exponents)) != tuple(sorted(degrees)):
        raise GeneratorConstructionError(
            "generator degrees %s do not match exponents" % (degrees,))

    polys = []
    duals = []
    for i, (d_i, p_i, p_dual_i) in enumerate(raw):
        prev_deg = degrees[:i]
        betas = _correction_monomials(prev_deg, d_i)
        if betas:
            corrections = []
            for beta in betas:
                mono = ring.one()
                mono_dual = ring.one()
                for j, e in enumerate(beta):
                    for _ in range(e):
                        mono = mono * polys[j]
                        mono_dual = mono_dual * duals[j]
                corrections.append((mono, mono_dual))
            lower = [(m, duals[m]) for m in range(i) if degrees[m] < d_i]
            columns = []
            base_rows = {}
            for mono, _ in corrections:
                col = {}
                for m_idx, dual_m in lower:
                    deriv = ring.apply_operator(dual_m, mono)
                    for mkey, c in deriv.terms.items():
                        if sum(mkey):
                            col[(m_idx, mkey)] = c
                columns.append(col)
            for m_idx, dual_m in lower:
                deriv = ring.apply_operator(dual_m, p_i)
                for mkey, c in deriv.terms.items():
                    if sum(mkey):
                        base_rows[(m_idx, mkey)] = c
            row_keys = sorted({k for col in columns for k in col} | set(base_rows))
            a_rows = [[col.get(kk, Fraction(0)) for col in columns] for kk in row_keys]
            b_vec = [base_rows.get(kk, Fraction(0)) for kk in row_keys]
            sol = linalg.solve(a_rows, b_vec)
            if sol is None:
                raise GeneratorConstructionError(
                    "no harmonicity correction exists at degree %d" % d_i)
            for c, (mono, mono_dual) in zip(sol, corrections):
                if c:
                    p_i = p_i - c * mono
                    p_dual_i = p_dual_i - c * mono_dual
        polys.append(p_i)
        duals.append(p_dual_i)

    for p, dual in zip(polys, duals):
        ring.register_dual(p, dual)
    gens = GeneratorSet(algebra=g, polys=polys, duals=duals, degrees=degrees)

    # independence: the Jacobian has full rank at a regular element
    reg = regular_nilpotent(g)
    numeric = [[p.diff(j).evaluate(reg.coords) for j in range(g.n)] for p in polys]
    if linalg.rank(numeric) != g.rank:
        raise GeneratorConstructionError(
            "Jacobian rank below %d at a regular element" % g.rank)
    g._cache["chevalley_generators"] = gens
    return gens


# ---------------------------------------------------------------------------
# the Jacobian matrix and its minors


@dataclass
class QMatrix:
    """Rows are the coordinate partials of the generators."""

    algebra: LieAlgebra
    entries: list  # l rows of n polynomials
    degrees: list  # row i is homogeneous of the i-th exponent

    @property
    def shape(self):
        return (len(self.entries), self.algebra.n)

    def row_space(self, i: int) -> PolySpace:
        ring = PolyRing.for_algebra(self.algebra)
        return PolySpace.from_polys(ring, self.entries[i], degree=self.degrees[i])

    def evaluate(self, coords):
        return [[p.evaluate(coords) for p in row] for row in self.entries]


def q_matrix(g: LieAlgebra, gens: GeneratorSet) -> QMatrix:
    entries = []
    degrees = []
    for p, d in zip(gens.polys, gens.degrees):
        row = [p.diff(j) for j in range(g.n)]
        for q in row:
            if not q.is_zero() and q.degree() != d - 1:
                raise GeneratorConstructionError("non-homogeneous Jacobian entry")
        entries.append(row)
        degrees.append(d - 1)
    return QMatrix(algebra=g, entries=entries, degrees=degrees)


def verify_adjoint_rows(g: LieAlgebra, q: QMatrix) -> dict:
    """Each row spans an n-dimensional ad-stable space of harmonic polynomials."""
    gens = chevalley_generators(g)
    report = {"rows": []}
    for i, row in enumerate(q.entries):
        space = q.row_space(i)
        stable = True
        for z_idx in range(g.n):
            for p in space.basis:
                if not space.contains(lie_derivative(p, g, z_idx)):
                    stable = False
                    break
            if not stable:
                break
        harmonic = all(is_harmonic(p, gens.polys) for p in row)
        report["rows"].append({
            "degree": q.degrees[i],
            "dim": space.dim,
            "full_dimension": space.dim == g.n,
            "ad_stable": stable,
            "harmonic": harmonic,
        })
    report["joint_rank"] = PolySpace.from_polys(
        PolyRing.for_algebra(g), [p for row in q.entries for p in row]).dim
    return report


def minors_space(q: QMatrix) -> PolySpace:
    """Row-reduced span of the determinants of all maximal minors of Q."""
    g = q.algebra
    ring = PolyRing.for_algebra(g)
    l, n = q.shape
    dets = []
    for cols in combinations(range(n), l):
        sub = [[q.entries[i][j] for j in cols] for i in range(l)]
        dets.append(_poly_det(sub, ring))
    degree = sum(q.degrees)
    return PolySpace.from_polys(ring, dets, degree=degree)


def _poly_det(mat, ring):
    n = len(mat)
    if n == 1:
        return mat[0][0]
    total = ring.zero()
    # Laplace expansion along the first column keeps the polynomial count low
    for i in range(n):
        entry = mat[i][0]
        if entry.is_zero():
            continue
        minor = [row[1:] for r, row in enumerate(mat) if r != i]
        term = entry * _poly_det(minor, ring)
        total = total + term if i % 2 == 0 else total - term
    return total
