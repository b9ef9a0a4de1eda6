import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from conftest import algebra
from sheetcalc import exterior as ext
from sheetcalc.chevalley import regular_nilpotent, sample_elements
from sheetcalc.errors import ConfigurationError
from sheetcalc.gammamap import (enumerate_matchings, gamma_map, gamma_map_basis,
                                iter_matchings, rk_space, variety_check, _perm_sign)
from sheetcalc.polyring import PolyRing, is_harmonic, lie_derivative
from sheetcalc.invariants import chevalley_generators


def _double_factorial(k):
    return math.prod(range(2 * k - 1, 0, -2)) if k else 1


@pytest.mark.parametrize("k", range(7))
def test_matching_count_materialized(k):
    assert len(enumerate_matchings(k)) == _double_factorial(k)


@pytest.mark.parametrize("k", [7, 8])
def test_matching_count_streaming(k):
    assert sum(1 for _ in iter_matchings(k)) == _double_factorial(k)


def _pair_partitions(items):
    """Oracle: all partitions of items into unordered 2-sets."""
    items = list(items)
    if not items:
        yield frozenset()
        return
    first = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for sub in _pair_partitions(rest):
            yield sub | {frozenset((first, items[i]))}


@pytest.mark.parametrize("k", range(5))
def test_matchings_biject_with_pair_partitions(k):
    got = {frozenset(frozenset(p) for p in m.pairs) for m in enumerate_matchings(k)}
    expected = set(_pair_partitions(range(1, 2 * k + 1)))
    assert got == expected
    assert len(got) == _double_factorial(k)


@pytest.mark.parametrize("k", range(6))
def test_matching_signs_and_canonical_form(k):
    for m in enumerate_matchings(k):
        flat = [x for pair in m.pairs for x in pair]
        assert m.sign == _perm_sign(flat)
        assert sorted(flat) == list(range(1, 2 * k + 1))
        firsts = [p[0] for p in m.pairs]
        assert firsts == sorted(firsts)
        assert all(a < b for a, b in m.pairs)


def test_gamma_map_k1(a1):
    _, g = a1
    ring = PolyRing.for_algebra(g)
    e, f = g.basis_element(1), g.basis_element(2)
    assert gamma_map(g, [e, f]) == ring.linear_form(g.basis_element(0))
    assert gamma_map(g, []) == ring.one()
    with pytest.raises(ConfigurationError):
        gamma_map(g, [e])


def test_gamma_map_alternating_and_multilinear(a2):
    _, g = a2
    rnd = random.Random(8)

    def rand():
        return g.element([Fraction(rnd.randint(-3, 3)) for _ in range(g.n)])

    for _ in range(100):
        xs = [rand() for _ in range(4)]
        base = gamma_map(g, xs)
        i, j = sorted(rnd.sample(range(4), 2))
        swapped = list(xs)
        swapped[i], swapped[j] = swapped[j], swapped[i]
        assert (gamma_map(g, swapped) + base).is_zero()
        repeated = list(xs)
        repeated[j] = repeated[i]
        assert gamma_map(g, repeated).is_zero()
        # linearity in one slot
        y = rand()
        bumped = list(xs)
        bumped[i] = xs[i] + y
        other = list(xs)
        other[i] = y
        assert gamma_map(g, bumped) == base + gamma_map(g, other)


def test_gamma_map_root_vector_expansion(a2):
    rs, g = a2
    k1 = rs.index(rs.simple_roots[0])
    k2 = rs.index(rs.simple_roots[1])
    xs = [g.basis_element(g.e_index(k1)), g.basis_element(g.f_index(k1)),
          g.basis_element(g.e_index(k2)), g.basis_element(g.f_index(k2))]
    p = gamma_map(g, xs)
    assert not p.is_zero()
    assert p.degree() == 2
    swapped = [xs[1], xs[0], xs[2], xs[3]]
    assert (gamma_map(g, swapped) + p).is_zero()


def test_gamma_map_basis_agrees_with_generic(a2):
    _, g = a2
    for combo in [(0, 1, 2, 3), (1, 2, 5, 7), (0, 3, 4, 6)]:
        xs = [g.basis_element(i) for i in combo]
        assert gamma_map_basis(g, combo) == gamma_map(g, xs)


@pytest.mark.parametrize("name,k,dim", [
    ("A1", 1, 3), ("A1", 2, 0),
    ("A2", 1, 8), ("A2", 3, 20),
    ("B2", 4, 35),
])
def test_rk_space_dimensions(name, k, dim):
    _, g = algebra(name)
    assert rk_space(g, k).dim == dim


def test_rk_space_is_harmonic(a2):
    _, g = a2
    gens = chevalley_generators(g)
    for k in range(1, g.r + 1):
        for p in rk_space(g, k).basis:
            assert is_harmonic(p, gens.polys)


@pytest.mark.parametrize("name", ["A1", "A2"])
def test_rk_space_is_ad_stable(name):
    _, g = algebra(name)
    for k in range(1, g.r + 1):
        space = rk_space(g, k)
        for z in range(g.n):
            for p in space.basis:
                assert space.contains(lie_derivative(p, g, z))


def test_eq16_duality_full_basis_a1(a1):
    _, g = a1
    ring = PolyRing.for_algebra(g)
    for j in range(g.n):
        p = ring.coordinate(j)
        for combo in combinations(range(g.n), 2):
            u = ext.basis_wedge(g, combo)
            assert (ext.ext_pairing(ext.gamma_hom(g, p), u)
                    == ring.pairing(p, gamma_map_basis(g, combo)))


def test_eq16_duality_random_a2(a2):
    _, g = a2
    ring = PolyRing.for_algebra(g)
    rnd = random.Random(12)
    for _ in range(200):
        k = rnd.randint(1, 3)
        mono = [0] * g.n
        for _ in range(k):
            mono[rnd.randrange(g.n)] += 1
        p = ring.monomial(mono, rnd.randint(1, 3))
        combo = sorted(rnd.sample(range(g.n), 2 * k))
        u = ext.basis_wedge(g, combo)
        assert (ext.ext_pairing(ext.gamma_hom(g, p), u)
                == ring.pairing(p, gamma_map_basis(g, combo)))


def test_variety_check_a1(a1):
    _, g = a1
    report = variety_check(g, 1, [g.zero(), g.basis_element(1)])
    assert report.passed
    assert [o.vanishes for o in report.outcomes] == [True, False]


def test_variety_check_a2_examples(a2):
    rs, g = a2
    space = rk_space(g, 3)
    e1 = g.basis_element(g.e_index(rs.index(rs.simple_roots[0])))
    assert all(p.evaluate(e1.coords) == 0 for p in space.basis)
    reg = regular_nilpotent(g)
    assert any(p.evaluate(reg.coords) != 0 for p in space.basis)


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_variety_theorem_on_sampled_strata(name):
    _, g = algebra(name)
    samples = []
    for two_j in range(0, 2 * g.r + 1, 2):
        samples.extend(sample_elements(g, two_j, 10, seed=2).elements)
    for k in range(1, g.r + 1):
        report = variety_check(g, k, samples)
        assert report.passed, (name, k, report.violations)
