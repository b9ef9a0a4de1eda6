"""Chevalley-basis realization of the classical Lie algebras.

The basis is (h_1..h_l, e_phi for positive phi in the fixed root order,
then e_{-phi}).  Structure constants are integers; bracket signs come from
the extraspecial-pair convention: for each non-simple positive root the
minimal decomposition (in the fixed root order) gets a positive sign, and
every other constant is forced from those by the standard string-length
relations.  The Killing form is computed honestly as trace(ad x ad y).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .errors import ConfigurationError
from .rootdata import Root, RootSystem


class LieAlgebra:
    def __init__(self, rootsys: RootSystem):
        self.rootsys = rootsys
        self.rank = rootsys.rank
        self.r = rootsys.r
        self.n = rootsys.n
        self.labels = (["h%d" % (i + 1) for i in range(self.rank)]
                       + ["e%d" % (k + 1) for k in range(self.r)]
                       + ["f%d" % (k + 1) for k in range(self.r)])
        #: structure[(i, j)] = {k: c} meaning [y_i, y_j] = sum c y_k
        self.structure = {}
        self.killing = None
        self._gram_inverse = None
        self._ad = None
        self._cache = {}  # scratch space for downstream modules

    # ---- index helpers ----
    def h_index(self, i: int) -> int:
        return i

    def e_index(self, k: int) -> int:
        return self.rank + k

    def f_index(self, k: int) -> int:
        return self.rank + self.r + k

    def root_vector_index(self, root: Root) -> int:
        """Basis index of e_root for any (positive or negative) root."""
        k = self.rootsys.index(root)
        if k is not None:
            return self.e_index(k)
        k = self.rootsys.index(-root)
        if k is None:
            raise KeyError("not a root: %s" % (root,))
        return self.f_index(k)

    def root_of_index(self, idx: int):
        """The root attached to a basis index, or None for Cartan elements."""
        if idx < self.rank:
            return None
        if idx < self.rank + self.r:
            return self.rootsys.positive_roots[idx - self.rank]
        return -self.rootsys.positive_roots[idx - self.rank - self.r]

    # ---- elements ----
    def element(self, coords) -> "LieElement":
        coords = tuple(coords)
        if len(coords) != self.n:
            raise ConfigurationError(
                "element needs %d coordinates, got %d" % (self.n, len(coords)))
        return LieElement(self, coords)

    def zero(self) -> "LieElement":
        return LieElement(self, (0,) * self.n)

    def basis_element(self, idx: int) -> "LieElement":
        return LieElement(self, tuple(int(i == idx) for i in range(self.n)))

    # ---- brackets ----
    def bracket_basis(self, i: int, j: int) -> dict:
        """Sparse coordinates of [y_i, y_j]."""
        return self.structure.get((i, j), {})

    def bracket(self, x: "LieElement", y: "LieElement") -> "LieElement":
        if x.algebra is not self or y.algebra is not self:
            raise ConfigurationError("bracket of elements from different algebras")
        acc = {}
        for i, a in enumerate(x.coords):
            if not a:
                continue
            for j, b in enumerate(y.coords):
                if not b:
                    continue
                table = self.structure.get((i, j))
                if not table:
                    continue
                ab = a * b
                for k, c in table.items():
                    acc[k] = acc.get(k, 0) + ab * c
        coords = [0] * self.n
        for k, v in acc.items():
            coords[k] = v
        return LieElement(self, tuple(coords))

    def ad_sparse(self, idx: int) -> dict:
        """ad(y_idx) as {(row, col): value}."""
        if self._ad is None:
            self._ad = [None] * self.n
        if self._ad[idx] is None:
            mat = {}
            for j in range(self.n):
                table = self.structure.get((idx, j))
                if table:
                    for k, c in table.items():
                        mat[(k, j)] = c
            self._ad[idx] = mat
        return self._ad[idx]

    def ad_matrix(self, x: "LieElement"):
        """Dense matrix of ad(x) acting on coordinates."""
        rows = [[0] * self.n for _ in range(self.n)]
        for i, a in enumerate(x.coords):
            if not a:
                continue
            for (k, j), c in self.ad_sparse(i).items():
                rows[k][j] += a * c
        return rows

    # ---- Killing form ----
    def killing_form(self, x: "LieElement", y: "LieElement"):
        total = 0
        for i, a in enumerate(x.coords):
            if not a:
                continue
            for j, b in enumerate(y.coords):
                if b:
                    total += a * b * self.killing[i][j]
        return total

    def gram_inverse(self):
        if self._gram_inverse is None:
            self._gram_inverse = linalg.invert(self.killing)
        return self._gram_inverse

    def dual_basis_coords(self, idx: int):
        """Coordinates of the Killing-dual basis vector y^idx."""
        return self.gram_inverse()[idx]

    def __repr__(self):
        return "LieAlgebra(%s, dim=%d)" % (self.rootsys.cartan_type, self.n)


@dataclass(frozen=True)
class LieElement:
    algebra: LieAlgebra
    coords: tuple

    def __add__(self, other):
        return LieElement(self.algebra,
                          tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        return LieElement(self.algebra,
                          tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return LieElement(self.algebra, tuple(-a for a in self.coords))

    def __rmul__(self, c):
        return LieElement(self.algebra, tuple(c * a for a in self.coords))

    def bracket(self, other):
        return self.algebra.bracket(self, other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def to_json(self):
        return [str(Fraction(c)) for c in self.coords]

    @classmethod
    def from_json(cls, algebra, data):
        return cls(algebra, tuple(Fraction(s) for s in data))

    def __eq__(self, other):
        return (isinstance(other, LieElement) and other.algebra is self.algebra
                and all(a == b for a, b in zip(self.coords, other.coords)))

    def __hash__(self):
        return hash(tuple(Fraction(c) for c in self.coords))


# ---------------------------------------------------------------------------
# construction


class _ConstantBuilder:
    """Structure constants N_{ab} from extraspecial-pair sign choices."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.pos = rs.positive_roots
        self.pos_set = {rt.coords for rt in self.pos}
        self.table = {}  # (i, j) with i < j -> N for positive pairs
        self._norms = {rt.coords: rs.inner(rt, rt) for rt in self.pos}

    def is_root(self, root: Root) -> bool:
        return root.coords in self.pos_set or (-root).coords in self.pos_set

    def norm(self, root: Root):
        c = root.coords if root.coords in self._norms else (-root).coords
        return self._norms[c]

    def string_p(self, a: Root, b: Root) -> int:
        """Largest p with b - p*a still a root."""
        p = 0
        cur = b + (-a)
        while self.is_root(cur):
            p += 1
            cur = cur + (-a)
        return p

    def build(self):
        rs = self.rs
        for idx, chi in enumerate(self.pos):
            if chi.height == 1:
                continue
            pairs = []
            for a_idx, phi in enumerate(self.pos):
                b = Root(tuple(x - y for x, y in zip(chi.coords, phi.coords)))
                b_idx = rs.index(b)
                if b_idx is not None and a_idx < b_idx:
                    pairs.append((a_idx, b_idx))
            if not pairs:
                raise ArithmeticError("no decomposition found for %s" % (chi,))
            a1, b1 = pairs[0]  # minimal first member: the extraspecial pair
            phi1, psi1 = self.pos[a1], self.pos[b1]
            n_extra = self.string_p(phi1, psi1) + 1
            self.table[(a1, b1)] = n_extra
            chi_norm = self.norm(chi)
            for a_idx, b_idx in pairs[1:]:
                phi, psi = self.pos[a_idx], self.pos[b_idx]
                total = Fraction(0)
                d2 = psi1 + (-phi)
                if self.is_root(d2):
                    total += Fraction(self.value(psi1, -phi) * self.value(phi1, -psi),
                                      self.norm(d2))
                d3 = phi1 + (-phi)
                if self.is_root(d3):
                    total += Fraction(self.value(-phi, phi1) * self.value(psi1, -psi),
                                      self.norm(d3))
                val = Fraction(chi_norm, n_extra) * total
                if val.denominator != 1:
                    raise ArithmeticError("non-integral constant at %s" % (chi,))
                val = int(val)
                if abs(val) != self.string_p(phi, psi) + 1:
                    raise ArithmeticError("string-length check failed at %s" % (chi,))
                self.table[(a_idx, b_idx)] = val

    def value(self, a: Root, b: Root) -> int:
        """N_{ab} for any roots a, b with a + b a root."""
        a_pos = a.coords in self.pos_set
        b_pos = b.coords in self.pos_set
        if a_pos and b_pos:
            i, j = self.rs.index(a), self.rs.index(b)
            return self.table[(i, j)] if i < j else -self.table[(j, i)]
        if not a_pos and not b_pos:
            return -self.value(-a, -b)
        if not a_pos:
            return -self.value(b, a)
        # a positive, b negative
        psi = -b
        diff = psi + (-a)
        if diff.coords in self.pos_set:
            val = Fraction(self.norm(diff), self.norm(psi)) * self.value(diff, a)
        else:
            down = a + (-psi)  # positive since a - psi is a root and a > psi fails otherwise
            val = -Fraction(self.norm(down), self.norm(a)) * self.value(psi, down)
        if val.denominator != 1:
            raise ArithmeticError("non-integral mixed constant")
        return int(val)


def build_lie_algebra(rs: RootSystem) -> LieAlgebra:
    g = LieAlgebra(rs)
    l, r = g.rank, g.r
    builder = _ConstantBuilder(rs)
    builder.build()

    def put(i, j, entries):
        entries = {k: c for k, c in entries.items() if c}
        if entries:
            g.structure[(i, j)] = entries
            g.structure[(j, i)] = {k: -c for k, c in entries.items()}

    all_roots = [(k, rt) for k, rt in enumerate(rs.positive_roots)]
    # [h_i, e_phi] = <phi, alpha_i^vee> e_phi
    for i in range(l):
        for k, rt in all_roots:
            c = rs.coroot_pairing(rt, i)
            if c:
                put(g.h_index(i), g.e_index(k), {g.e_index(k): c})
                put(g.h_index(i), g.f_index(k), {g.f_index(k): -c})
    # [e_phi, e_{-phi}] = h_phi (the coroot)
    for k, rt in all_roots:
        coeffs = rs.coroot_coefficients(rt)
        put(g.e_index(k), g.f_index(k),
            {g.h_index(i): c for i, c in enumerate(coeffs)})
    # root-root brackets
    signed = ([(g.e_index(k), rt) for k, rt in all_roots]
              + [(g.f_index(k), -rt) for k, rt in all_roots])
    for ia, (idx_a, root_a) in enumerate(signed):
        for idx_b, root_b in signed[ia + 1:]:
            s = root_a + root_b
            if not any(s.coords):
                continue  # the coroot case, handled above
            if not builder.is_root(s):
                continue
            c = builder.value(root_a, root_b)
            put(idx_a, idx_b, {g.root_vector_index(s): c})

    # Killing form straight from the adjoint matrices
    ads = [g.ad_sparse(i) for i in range(g.n)]
    killing = [[0] * g.n for _ in range(g.n)]
    for i in range(g.n):
        for j in range(i, g.n):
            total = 0
            aj = ads[j]
            for (row, col), c in ads[i].items():
                other = aj.get((col, row))
                if other:
                    total += c * other
            killing[i][j] = total
            killing[j][i] = total
    g.killing = killing
    return g


# ---------------------------------------------------------------------------
# orbit dimensions and sampling


def orbit_dim(x: LieElement) -> int:
    """dim [g, x], i.e. the exact rank of ad(x); always even."""
    if x.is_zero():
        return 0
    return linalg.rank(x.algebra.ad_matrix(x))


def regular_nilpotent(g: LieAlgebra) -> LieElement:
    """The principal nilpotent sum of simple root vectors."""
    coords = [0] * g.n
    for alpha in g.rootsys.simple_roots:
        coords[g.e_index(g.rootsys.index(alpha))] = 1
    return g.element(coords)


@dataclass
class SampleSet:
    """Outcome of stratified sampling: elements all share one orbit dimension."""

    stratum: int
    requested: int
    elements: list = field(default_factory=list)
    complete: bool = True
    message: str | None = None


def _unipotent_twist(g: LieAlgebra, x: LieElement, root_idx: int, t) -> LieElement:
    """Apply exp(t ad e) for a root vector e; exact since ad e is nilpotent."""
    u = g.basis_element(root_idx)
    acc = x
    term = x
    m = 0
    while True:
        m += 1
        term = Fraction(t, m) * g.bracket(u, term)
        if term.is_zero():
            break
        acc = acc + term
        if m > g.n:
            raise ArithmeticError("ad of a root vector failed to be nilpotent")
    return acc


def sample_elements(g: LieAlgebra, two_j: int, count: int, seed: int = 0) -> SampleSet:
    """Deterministic elements x with dim [g,x] == two_j, up to `count` of them.

    Draws from semisimple points on root-hyperplane intersections, root
    vectors and their sums, and random rational combinations, then spreads
    each hit through its orbit with exact unipotent twists.  May return
    fewer than requested (complete=False) when the stratum is small or the
    generator cannot reach it.
    """
    if two_j < 0 or two_j > 2 * g.r or two_j % 2:
        raise ConfigurationError("stratum must be an even integer in [0, %d]" % (2 * g.r,))
    rng = random.Random("sheetcalc:%d:%d" % (seed, two_j))
    result = SampleSet(stratum=two_j, requested=count)
    seen = set()

    def consider(x: LieElement) -> bool:
        key = tuple(Fraction(c) for c in x.coords)
        if key in seen:
            return False
        seen.add(key)
        if orbit_dim(x) != two_j:
            return False
        result.elements.append(x)
        return True

    root_indices = [g.e_index(k) for k in range(g.r)] + [g.f_index(k) for k in range(g.r)]

    def twisted(x: LieElement) -> LieElement:
        for _ in range(rng.randint(1, 3)):
            t = Fraction(rng.randint(1, 5), rng.randint(1, 3)) * rng.choice((-1, 1))
            x = _unipotent_twist(g, x, rng.choice(root_indices), t)
        return x

    candidates = [g.zero(), regular_nilpotent(g)]
    for k in range(g.r):
        candidates.append(g.basis_element(g.e_index(k)))
        candidates.append(g.basis_element(g.f_index(k)))

    budget = max(60 * count, 600)
    attempts = 0
    while attempts < budget and len(result.elements) < count:
        attempts += 1
        if candidates:
            consider(candidates.pop(0))
        elif result.elements and rng.random() < 0.8:
            # orbit-preserving spread of a known hit via exact unipotent twists
            base = rng.choice(result.elements)
            if base.is_zero():
                candidates.extend(_fresh_candidates(g, rng))
            else:
                consider(twisted(base))
        else:
            candidates.extend(_fresh_candidates(g, rng))
    result.complete = len(result.elements) >= count
    if not result.elements:
        result.message = "stratum unreachable by sampler"
    elif not result.complete:
        result.message = ("sampler found only %d of %d requested elements"
                          % (len(result.elements), count))
    return result


def _fresh_candidates(g: LieAlgebra, rng) -> list:
    out = []
    l, r, n = g.rank, g.r, g.n
    # semisimple points on intersections of root hyperplanes
    subset_size = rng.randint(0, min(r, l))
    chosen = rng.sample(range(r), subset_size) if subset_size else []
    rows = []
    for k in chosen:
        rt = g.rootsys.positive_roots[k]
        rows.append([g.rootsys.coroot_pairing(rt, i) for i in range(l)])
    if rows:
        kernel = linalg.kernel_basis(rows)
    else:
        kernel = [[Fraction(int(i == j)) for j in range(l)] for i in range(l)]
    if kernel:
        coeffs = [rng.randint(-5, 5) for _ in kernel]
        hvec = [sum(c * v[i] for c, v in zip(coeffs, kernel)) for i in range(l)]
        coords = [0] * n
        for i in range(l):
            coords[i] = hvec[i]
        out.append(g.element(coords))
    # sums of a few root vectors
    how_many = rng.randint(2, min(3, 2 * r) if r > 1 else 2)
    picks = rng.sample(range(2 * r), min(how_many, 2 * r))
    coords = [0] * n
    for p in picks:
        coords[l + p] = rng.randint(1, 3)
    out.append(g.element(coords))
    # a dense random rational element
    out.append(g.element([Fraction(rng.randint(-9, 9)) for _ in range(n)]))
    return out


# ---------------------------------------------------------------------------
# structural verification


@dataclass
class StructureReport:
    passed: bool
    checks: dict
    failures: list


def verify_structure(g: LieAlgebra) -> StructureReport:
    """Exhaustive antisymmetry / Jacobi / Killing-invariance verification."""
    failures = []
    n = g.n
    # antisymmetry
    anti = 0
    for (i, j), table in g.structure.items():
        other = g.structure.get((j, i), {})
        anti += 1
        if {k: -c for k, c in table.items()} != other:
            failures.append("antisymmetry fails at (%d, %d)" % (i, j))

    def bracket_sparse(i, table):
        acc = {}
        for j, c in table.items():
            inner = g.structure.get((i, j))
            if inner:
                for k, d in inner.items():
                    acc[k] = acc.get(k, 0) + c * d
        return acc

    jacobi = 0
    for i in range(n):
        for j in range(i + 1, n):
            tij = g.structure.get((i, j), {})
            for k in range(j + 1, n):
                jacobi += 1
                acc = bracket_sparse(i, g.structure.get((j, k), {}))
                for key, val in bracket_sparse(j, {m: -c for m, c in g.structure.get((i, k), {}).items()}).items():
                    acc[key] = acc.get(key, 0) + val
                for key, val in bracket_sparse(k, tij).items():
                    acc[key] = acc.get(key, 0) + val
                if any(acc.values()):
                    failures.append("Jacobi fails at (%d, %d, %d)" % (i, j, k))

    invariance = 0
    bad_invariance = 0
    for i in range(n):
        for j in range(n):
            tij = g.structure.get((i, j), {})
            for k in range(n):
                invariance += 1
                left = sum(c * g.killing[m][k] for m, c in tij.items())
                tjk = g.structure.get((j, k), {})
                right = sum(c * g.killing[i][m] for m, c in tjk.items())
                if left != right:
                    bad_invariance += 1
    if bad_invariance:
        failures.append("Killing invariance fails on %d triples" % bad_invariance)

    if linalg.rank(g.killing) != n:
        failures.append("Killing form is degenerate")
    # root-space orthogonality
    for k1 in range(g.r):
        for k2 in range(g.r):
            if g.killing[g.e_index(k1)][g.e_index(k2)] != 0:
                failures.append("B(e%d, e%d) != 0" % (k1 + 1, k2 + 1))
            if k1 != k2 and g.killing[g.e_index(k1)][g.f_index(k2)] != 0:
                failures.append("B(e%d, f%d) != 0" % (k1 + 1, k2 + 1))
    for i in range(g.rank):
        for k in range(g.r):
            if g.killing[i][g.e_index(k)] or g.killing[i][g.f_index(k)]:
                failures.append("B(h%d, root vector %d) != 0" % (i + 1, k + 1))
    if linalg.rank([row[:g.rank] for row in g.killing[:g.rank]]) != g.rank:
        failures.append("Killing form degenerate on the Cartan subalgebra")

    checks = {"antisymmetry_pairs": anti, "jacobi_triples": jacobi,
              "invariance_triples": invariance, "dimension": n}
    return StructureReport(passed=not failures, checks=checks, failures=failures)
