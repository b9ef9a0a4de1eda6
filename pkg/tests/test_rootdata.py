import pytest

from sheetcalc.errors import ConfigurationError
from sheetcalc.rootdata import (CartanType, Root, build_root_system, exponents,
                                parse_cartan_type, positive_root_count)


def test_parse_basics():
    assert parse_cartan_type("A2") == CartanType("A", 2)
    assert parse_cartan_type("b3") == CartanType("B", 3)
    assert parse_cartan_type(" d4 ") == CartanType("D", 4)


@pytest.mark.parametrize("bad", ["E8", "A0", "Q3", "A", "2", ""])
def test_parse_rejects(bad):
    with pytest.raises(ConfigurationError):
        parse_cartan_type(bad)


def test_rank_bound_is_named_in_error():
    with pytest.raises(ConfigurationError, match="bound 6"):
        build_root_system(CartanType("A", 7))
    # the bound is configurable
    rs = build_root_system(CartanType("A", 7), max_rank=7)
    assert rs.r == 28


def test_low_rank_d_gate():
    with pytest.raises(ConfigurationError, match="low-rank alias"):
        build_root_system(CartanType("D", 3))
    rs = build_root_system(CartanType("D", 3), allow_low_rank_d=True)
    assert rs.r == 6
    with pytest.raises(ConfigurationError):
        CartanType("D", 1)


@pytest.mark.parametrize("family,rank", [
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("A", 6),
    ("B", 2), ("B", 3), ("B", 4), ("B", 5),
    ("C", 2), ("C", 3), ("C", 4),
    ("D", 4), ("D", 5), ("D", 6),
])
def test_closure_matches_closed_form_counts(family, rank):
    t = CartanType(family, rank)
    rs = build_root_system(t)
    assert rs.r == positive_root_count(t)
    assert rs.n == rs.rank + 2 * rs.r
    assert sum(rs.exponents) == rs.r


def test_a1_and_a2_positive_roots():
    rs1 = build_root_system(CartanType("A", 1))
    assert [rt.coords for rt in rs1.positive_roots] == [(1,)]
    assert rs1.exponents == (1,)

    rs2 = build_root_system(CartanType("A", 2))
    assert {rt.coords for rt in rs2.positive_roots} == {(1, 0), (0, 1), (1, 1)}
    assert rs2.r == 3


def test_b2_structure():
    rs = build_root_system(CartanType("B", 2))
    assert {rt.coords for rt in rs.positive_roots} == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert rs.exponents == (1, 3)
    # the short simple root column of the Cartan matrix carries the -2
    assert rs.cartan_matrix[0][1] == -2
    assert rs.cartan_matrix[1][0] == -1
    assert rs.highest_root.coords == (1, 2)


@pytest.mark.parametrize("name,expected", [
    ("A1", (1,)),
    ("A2", (1, 2)),
    ("B2", (1, 3)),
    ("C3", (1, 3, 5)),
    ("D4", (1, 3, 3, 5)),
    ("D5", (1, 3, 4, 5, 7)),
])
def test_exponents(name, expected):
    assert exponents(parse_cartan_type(name)) == expected


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4"])
def test_order_refines_height_and_simple_roots_lead(name):
    rs = build_root_system(parse_cartan_type(name))
    heights = [rt.height for rt in rs.positive_roots]
    assert heights == sorted(heights)
    assert all(all(c >= 0 for c in rt.coords) for rt in rs.positive_roots)
    # roots of height one are exactly the simple roots
    h1 = {rt.coords for rt in rs.positive_roots if rt.height == 1}
    assert h1 == {rt.coords for rt in rs.simple_roots}


@pytest.mark.parametrize("name", ["A2", "A3", "B2", "B3", "C3", "D4"])
def test_sum_table_total_and_symmetric(name):
    rs = build_root_system(parse_cartan_type(name))
    for i in range(rs.r):
        for j in range(rs.r):
            assert (i, j) in rs.sum_table
            assert rs.sum_table[(i, j)] == rs.sum_table[(j, i)]
            target = rs.sum_table[(i, j)]
            if target is not None:
                expected = rs.positive_roots[i] + rs.positive_roots[j]
                assert rs.positive_roots[target].coords == expected.coords


def test_coroot_data_is_integral():
    for name in ("A3", "B3", "C3", "D4"):
        rs = build_root_system(parse_cartan_type(name))
        for rt in rs.positive_roots:
            rs.coroot_coefficients(rt)
            for i in range(rs.rank):
                rs.coroot_pairing(rt, i)


def test_root_value_semantics():
    r = Root((1, 0))
    s = Root((0, 1))
    assert (r + s).coords == (1, 1)
    assert (-r).coords == (-1, 0)
    assert r.height == 1 and r.is_positive
    assert not (-r).is_positive
