import random
from fractions import Fraction

import pytest

from conftest import algebra
from sheetcalc.chevalley import (LieElement, orbit_dim, regular_nilpotent,
                                 sample_elements, verify_structure)
from sheetcalc.errors import ConfigurationError


def test_a1_chevalley_relations(a1):
    rs, g = a1
    h, e, f = (g.basis_element(i) for i in range(3))
    assert g.bracket(h, e) == 2 * e
    assert g.bracket(h, f) == -2 * f
    assert g.bracket(e, f) == h
    assert g.bracket(e, e).is_zero()


def test_a1_killing_values(a1):
    rs, g = a1
    assert g.killing[0][0] == 8
    assert g.killing[1][2] == 4
    assert g.killing[1][1] == 0


def test_a2_simple_bracket_sign(a2):
    rs, g = a2
    i1 = g.e_index(rs.index(rs.simple_roots[0]))
    i2 = g.e_index(rs.index(rs.simple_roots[1]))
    target = g.e_index(rs.index(rs.simple_roots[0] + rs.simple_roots[1]))
    table = g.bracket_basis(i1, i2)
    assert set(table) == {target}
    assert table[target] in (1, -1)


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "A5",
                                  "B2", "B3", "C2", "C3", "D2", "D3", "D4"])
def test_structure_exhaustive(name):
    rs, g = algebra(name)
    report = verify_structure(g)
    assert report.passed, report.failures
    assert report.checks["jacobi_triples"] == g.n * (g.n - 1) * (g.n - 2) // 6


def test_structure_constants_are_integers():
    for name in ("A3", "B3", "C3", "D4"):
        _, g = algebra(name)
        for table in g.structure.values():
            for c in table.values():
                assert c == int(c)


def test_bracket_bilinear(a2):
    rs, g = a2
    rnd = random.Random(11)

    def rand():
        return g.element([Fraction(rnd.randint(-5, 5), rnd.randint(1, 3))
                          for _ in range(g.n)])

    for _ in range(25):
        x, y, z = rand(), rand(), rand()
        c = Fraction(rnd.randint(-4, 4), rnd.randint(1, 5))
        assert g.bracket(x + y, z) == g.bracket(x, z) + g.bracket(y, z)
        assert g.bracket(c * x, y) == c * g.bracket(x, y)
        assert (g.bracket(x, y) + g.bracket(y, x)).is_zero()


def test_bracket_rejects_mixed_algebras(a1, a2):
    _, g1 = a1
    _, g2 = a2
    with pytest.raises(ConfigurationError):
        g1.bracket(g1.zero(), g2.zero())


def test_orbit_dims_a1(a1):
    rs, g = a1
    h, e, _ = (g.basis_element(i) for i in range(3))
    assert orbit_dim(g.zero()) == 0
    assert orbit_dim(h) == 2
    assert orbit_dim(e) == 2


def test_orbit_dims_a2(a2):
    rs, g = a2
    e1 = g.basis_element(g.e_index(rs.index(rs.simple_roots[0])))
    assert orbit_dim(e1) == 4
    assert orbit_dim(regular_nilpotent(g)) == 6


@pytest.mark.parametrize("name,expected", [("A1", 2), ("A2", 6), ("B2", 8), ("D4", 24)])
def test_regular_nilpotent_is_regular(name, expected):
    rs, g = algebra(name)
    assert orbit_dim(regular_nilpotent(g)) == expected == 2 * g.r


@pytest.mark.parametrize("seed", range(100))
def test_orbit_dim_always_even(seed, a2, b2):
    for _, g in (a2, b2):
        rnd = random.Random(seed)
        for _ in range(2):
            x = g.element([Fraction(rnd.randint(-9, 9)) for _ in range(g.n)])
            assert orbit_dim(x) % 2 == 0


def test_sampler_strata(a2):
    rs, g = a2
    zero_batch = sample_elements(g, 0, 5, seed=0)
    assert [x.is_zero() for x in zero_batch.elements] == [True]
    assert not zero_batch.complete

    empty = sample_elements(g, 2, 5, seed=0)
    assert empty.elements == []
    assert empty.message == "stratum unreachable by sampler"

    for two_j in (4, 6):
        batch = sample_elements(g, two_j, 20, seed=0)
        assert batch.complete
        assert len(batch.elements) == 20
        assert all(orbit_dim(x) == two_j for x in batch.elements)


def test_sampler_deterministic(b2):
    rs, g = b2
    one = sample_elements(g, 4, 10, seed=7)
    two = sample_elements(g, 4, 10, seed=7)
    assert one.elements == two.elements
    other = sample_elements(g, 4, 10, seed=8)
    assert other.elements != one.elements


def test_sampler_rejects_bad_stratum(a1):
    _, g = a1
    with pytest.raises(ConfigurationError):
        sample_elements(g, 3, 1, seed=0)
    with pytest.raises(ConfigurationError):
        sample_elements(g, 4, 1, seed=0)


def test_element_json_round_trip(a2):
    _, g = a2
    x = g.element([Fraction(3, 7) if i == 2 else 0 for i in range(g.n)])
    data = x.to_json()
    assert data[2] == "3/7"
    assert LieElement.from_json(g, data) == x
