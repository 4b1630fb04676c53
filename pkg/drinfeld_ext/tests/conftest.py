import pytest
from hypothesis import strategies as st

from drinfeld_ext.base_field import FqConfig, parse_k_element
from drinfeld_ext.skew_poly import parse_skew_poly
from drinfeld_ext.tmodule import make_drinfeld

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.fixture
def f2():
    return FqConfig.from_q(2)


@pytest.fixture
def f3():
    return FqConfig.from_q(3)


@pytest.fixture
def f4():
    return FqConfig.from_q(4)


@pytest.fixture(params=[2, 3, 4], ids=lambda q: f"q={q}")
def field(request):
    return FqConfig.from_q(request.param)


@pytest.fixture
def rank_two(f2):
    """theta + theta*tau + tau^2 over F_2."""
    return make_drinfeld([f2.theta(), f2.one()])


def k(text, config):
    return parse_k_element(text, config)


def sp(text, config):
    return parse_skew_poly(text, config)


def drinfeld(texts, config):
    return make_drinfeld([parse_k_element(t, config) for t in texts])
