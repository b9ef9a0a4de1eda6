import pytest

from sheetcalc.rootdata import build_root_system, parse_cartan_type
from sheetcalc.chevalley import build_lie_algebra


_cache = {}


def algebra(name):
    """Build (root system, algebra) once per test session."""
    if name not in _cache:
        low_rank = name in ("D2", "D3")
        rs = build_root_system(parse_cartan_type(name), allow_low_rank_d=low_rank)
        _cache[name] = (rs, build_lie_algebra(rs))
    return _cache[name]


@pytest.fixture(scope="session")
def a1():
    return algebra("A1")


@pytest.fixture(scope="session")
def a2():
    return algebra("A2")


@pytest.fixture(scope="session")
def a3():
    return algebra("A3")


@pytest.fixture(scope="session")
def b2():
    return algebra("B2")


@pytest.fixture(scope="session")
def d2():
    return algebra("D2")


@pytest.fixture(scope="session")
def d4():
    return algebra("D4")
