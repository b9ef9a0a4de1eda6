import random
from fractions import Fraction

import pytest

from conftest import algebra
from sheetcalc import exterior as ext
from sheetcalc.chevalley import orbit_dim, regular_nilpotent, sample_elements
from sheetcalc.invariants import chevalley_generators
from sheetcalc.polyring import PolyRing


def _rand_element(g, rnd, lo=-4, hi=4):
    return g.element([Fraction(rnd.randint(lo, hi)) for _ in range(g.n)])


def test_wedge_signs_and_nilpotence(a2):
    _, g = a2
    rnd = random.Random(1)
    u = ext.ext_vector(g, _rand_element(g, rnd))
    v = ext.ext_vector(g, _rand_element(g, rnd))
    w = ext.ext_vector(g, _rand_element(g, rnd))
    assert u.wedge(u).is_zero()
    assert (u.wedge(v) + v.wedge(u)).is_zero()
    assert u.wedge(v.wedge(w)) == (u.wedge(v)).wedge(w)
    # grade-2 elements commute
    uv, vw = u.wedge(v), v.wedge(w)
    assert uv.wedge(vw) == vw.wedge(uv)


def test_basis_wedge_top_form(a1):
    _, g = a1
    top = ext.basis_wedge(g, [1, 0]).wedge(ext.basis_wedge(g, [2]))
    assert list(top.terms.values()) in ([1], [-1])
    assert top.grades() == [3]
    repeated = ext.basis_wedge(g, [1, 0]).wedge(ext.basis_wedge(g, [1, 2]))
    assert repeated.is_zero()


def test_coboundary_zero_and_linearity(a2):
    _, g = a2
    assert ext.coboundary(g.zero()).is_zero()
    rnd = random.Random(2)
    x, y = _rand_element(g, rnd), _rand_element(g, rnd)
    assert ext.coboundary(x + y) == ext.coboundary(x) + ext.coboundary(y)


def test_coboundary_frozen_values(a1):
    _, g = a1
    h, e, f = (g.basis_element(i) for i in range(3))
    dh = ext.coboundary(h)
    assert dh == Fraction(1, 2) * ext.basis_wedge(g, [1, 2])  # e ^ f
    de = ext.coboundary(e)
    assert de == Fraction(1, 4) * ext.basis_wedge(g, [0, 1])  # h ^ e


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_coboundary_contract(name):
    # the defining contract: (dx, u ^ v) = -B(x, [u, v])
    _, g = algebra(name)
    rnd = random.Random(3)
    for _ in range(20):
        x, u, v = (_rand_element(g, rnd) for _ in range(3))
        lhs = ext.ext_pairing(ext.coboundary(x),
                              ext.ext_vector(g, u).wedge(ext.ext_vector(g, v)))
        rhs = -g.killing_form(x, g.bracket(u, v))
        assert lhs == rhs


def test_ext_pairing_values(a1):
    _, g = a1
    ef = ext.basis_wedge(g, [1, 2])
    assert ext.ext_pairing(ef, ef) == -16
    eh = ext.basis_wedge(g, [0, 1])
    assert ext.ext_pairing(eh, eh) == 0  # e is isotropic and B(h, e) = 0
    # different grades pair to zero
    assert ext.ext_pairing(ext.basis_wedge(g, [0]), ef) == 0


def test_power_profile_examples(a1, a2):
    _, g1 = a1
    prof0 = ext.dx_power_profile(g1.zero())
    assert prof0.k_max == 0
    assert prof0.witness == ext.ext_scalar(g1, 1)
    assert prof0.matches_orbit and prof0.witness_spans_bracket_image

    prof_e = ext.dx_power_profile(g1.basis_element(1))
    assert prof_e.k_max == 1
    assert prof_e.matches_orbit and prof_e.witness_spans_bracket_image

    rs2, g2 = a2
    e1 = g2.basis_element(g2.e_index(rs2.index(rs2.simple_roots[0])))
    assert ext.dx_power_profile(e1).k_max == 2
    reg = regular_nilpotent(g2)
    prof_reg = ext.dx_power_profile(reg)
    assert prof_reg.k_max == 3
    assert ext.coboundary(reg).wedge_power(4).is_zero()


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_power_profile_matches_orbit_dimension(name):
    rs, g = algebra(name)
    samples = []
    for two_j in range(0, 2 * g.r + 1, 2):
        samples.extend(sample_elements(g, two_j, 12, seed=5).elements)
    assert len(samples) >= 25 or g.r == 1
    for x in samples:
        prof = ext.dx_power_profile(x)
        assert 2 * prof.k_max == orbit_dim(x)
        assert prof.matches_orbit and prof.witness_spans_bracket_image


def test_gamma_hom_degree_one_and_constants(a1):
    _, g = a1
    ring = PolyRing.for_algebra(g)
    assert ext.gamma_hom(g, ring.one()) == ext.ext_scalar(g, 1)
    h = g.basis_element(0)
    fh = ring.linear_form(h)
    assert ext.gamma_hom(g, fh) == (-1) * ext.coboundary(h)
    # x = h lies in the two-dimensional stratum, so the square dies
    assert ext.gamma_hom(g, fh ** 2).is_zero()


@pytest.mark.parametrize("name", ["a1", "a2"])
def test_gamma_hom_is_multiplicative(name, request):
    _, g = request.getfixturevalue(name)
    ring = PolyRing.for_algebra(g)
    rnd = random.Random(4)
    for _ in range(15):
        p = ring.linear_form(_rand_element(g, rnd)) + ring.coordinate(rnd.randrange(g.n))
        q = ring.linear_form(_rand_element(g, rnd))
        assert ext.gamma_hom(g, p * q) == ext.gamma_hom(g, p).wedge(ext.gamma_hom(g, q))


@pytest.mark.parametrize("name", ["a1", "a2"])
def test_gamma_power_identity(name, request):
    # gamma(x^k) = (-dx)^k for 50 random x and every k up to the root count
    _, g = request.getfixturevalue(name)
    ring = PolyRing.for_algebra(g)
    rnd = random.Random(6)
    for trial in range(50):
        if trial % 5 == 0:
            x = _rand_element(g, rnd)
        else:
            coords = [0] * g.n
            for idx in rnd.sample(range(g.n), 3):
                coords[idx] = rnd.randint(-4, 4)
            x = g.element(coords)
        fx = ring.linear_form(x)
        mdx = (-1) * ext.coboundary(x)
        for k in range(1, g.r + 1):
            assert ext.gamma_hom(g, fx ** k) == mdx.wedge_power(k)


@pytest.mark.parametrize("name", ["A1", "A2", "B2"])
def test_gamma_kills_invariant_generators(name):
    _, g = algebra(name)
    gens = chevalley_generators(g)
    for p in gens.polys:
        assert ext.gamma_hom(g, p).is_zero()


def test_ext_element_json(a1):
    _, g = a1
    u = Fraction(1, 2) * ext.basis_wedge(g, [1, 2])
    assert u.to_json() == [[["e1", "f1"], "1/2"]]
