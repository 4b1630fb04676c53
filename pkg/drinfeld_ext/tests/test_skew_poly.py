import pytest
from hypothesis import given, settings

from drinfeld_ext.base_field import FqConfig
from drinfeld_ext.exceptions import DimensionError, ParseError
from drinfeld_ext.skew_poly import (
    NEG_INF,
    SkewMatrix,
    SkewPoly,
    degree,
    format_skew_poly,
    k_matrix,
    parse_skew_matrix,
    parse_skew_poly,
    skew_mul,
)
from drinfeld_ext.tests.conftest import k, seeds, sp
from drinfeld_ext.tmodule import carlitz_tensor
from drinfeld_ext.verify import make_rng, random_skew


def test_commutation_rule(f2):
    tau = SkewPoly.tau(f2)
    theta = SkewPoly.constant(f2.theta())
    assert skew_mul(tau, theta) == sp("T^2*tau", f2)


def test_square_of_carlitz(f2):
    c = sp("T+tau", f2)
    assert c * c == sp("T^2 + (T+T^2)*tau + tau^2", f2)


def test_unit(f3):
    a = sp("T + 2*T*tau + tau^3", f3)
    assert a * SkewPoly.one(f3) == a
    assert SkewPoly.one(f3) * a == a


def test_degree(f2):
    assert degree(sp("T+tau", f2)) == 1
    assert degree(SkewPoly.zero(f2)) == NEG_INF
    assert degree(sp("tau^3+T*tau", f2)) == 3


def test_evaluation(f3):
    a = sp("T + tau", f3)
    b = k("T+1", f3)
    assert a(b) == k("T", f3) * b + b.frobenius(1)


def test_right_scale_and_shift(f3):
    a = sp("1 + T*tau", f3)
    x = k("T+1", f3)
    assert a.right_scale(x) == a * SkewPoly.constant(x)
    assert a.shift(2) == SkewPoly.tau(f3, 2) * a


def test_printing(f2):
    assert format_skew_poly(sp("(1+T)*tau", f2)) == "(1+T)*tau"
    assert format_skew_poly(sp("T + tau^2", f2)) == "T+tau^2"
    assert format_skew_poly(sp("(1/T)*tau", f2)) == "((1)/(T))*tau"
    assert format_skew_poly(SkewPoly.zero(f2)) == "0"


def test_parse_rejects_division_by_tau(f2):
    with pytest.raises(ParseError, match="division"):
        parse_skew_poly("1/tau", f2)


def test_mat_mul_identity(f3):
    b = parse_skew_matrix([["T", "tau"], ["1", "T*tau^2"]], f3)
    assert SkewMatrix.identity(f3, 2) * b == b


def test_mat_mul_one_by_one(f2):
    a = parse_skew_matrix([["tau"]], f2)
    b = parse_skew_matrix([["T"]], f2)
    assert a * b == parse_skew_matrix([["T^2*tau"]], f2)


def test_carlitz_tensor_times_column(f3):
    c = k("T+2", f3)
    psi = carlitz_tensor(f3, 2).phi_t
    column = k_matrix(f3, [[f3.zero()], [c]])
    assert psi * column == k_matrix(f3, [[c], [f3.theta() * c]])


def test_mat_mul_shape_mismatch(f2):
    a = SkewMatrix.identity(f2, 2)
    b = SkewMatrix.identity(f2, 3)
    with pytest.raises(DimensionError):
        a * b
    with pytest.raises(DimensionError):
        a + b


def test_constant_term(f2):
    assert sp("T+tau", f2).constant_term() == f2.theta()
    tau_identity = SkewMatrix.scalar(f2, SkewPoly.tau(f2), 3)
    assert tau_identity.constant_term().is_zero()
    expected = parse_skew_matrix([["T", "1", "0"], ["0", "T", "1"], ["0", "0", "T"]], f2)
    assert carlitz_tensor(f2, 3).phi_t.constant_term() == expected


def test_blocks_and_submatrix(f2):
    a = parse_skew_matrix([["T", "tau"], ["1", "0"]], f2)
    one = SkewMatrix.identity(f2, 1)
    grid = SkewMatrix.blocks([[a, SkewMatrix.zero(f2, 2, 1)], [SkewMatrix.zero(f2, 1, 2), one]])
    assert grid.shape == (3, 3)
    assert grid.submatrix(0, 2, 0, 2) == a
    with pytest.raises(DimensionError):
        SkewMatrix(f2, [[SkewPoly.one(f2)], []])


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_ring_axioms(seed):
    config = FqConfig.from_q(3)
    rng = make_rng(seed)
    a, b, c = (random_skew(rng, config, 2, nonzero=True) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert (a * b).degree == a.degree + b.degree
    assert parse_skew_poly(format_skew_poly(a), config) == a


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_evaluation_is_a_ring_map(seed):
    config = FqConfig.from_q(2)
    rng = make_rng(seed)
    a, b = random_skew(rng, config, 2), random_skew(rng, config, 2)
    x = k("T+1", config)
    assert (a * b)(x) == a(b(x))
    assert (a + b)(x) == a(x) + b(x)
