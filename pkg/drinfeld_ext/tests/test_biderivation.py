import pytest
from hypothesis import given, settings

from drinfeld_ext.base_field import FqConfig, parse_t_poly
from drinfeld_ext.biderivation import (
    Biderivation,
    baer_sum,
    delta_eval,
    extension_matrix,
    inner,
    is_der0,
    is_strictly_inner,
    split_check,
    t_action_left,
    t_action_right,
)
from drinfeld_ext.exceptions import DimensionError
from drinfeld_ext.ext_engine import KINDS, bonn_inner
from drinfeld_ext.skew_poly import SkewMatrix, SkewPoly, parse_skew_matrix
from drinfeld_ext.tests.conftest import k, seeds, sp
from drinfeld_ext.tmodule import carlitz, phi_eval
from drinfeld_ext.verify import make_rng, random_biderivation, random_skew_matrix, random_t_poly


def value(text, config):
    return SkewMatrix.from_poly(sp(text, config))


def test_delta_eval(f2):
    C = carlitz(f2)
    delta = Biderivation(C, C, value("tau", f2))
    assert delta_eval(delta, parse_t_poly("t", f2)) == delta.value
    assert delta_eval(delta, parse_t_poly("1", f2)).is_zero()
    assert delta(parse_t_poly("t^2", f2)) == value("(T+T^2)*tau", f2)


def test_shape_is_checked(f2, rank_two):
    with pytest.raises(DimensionError):
        Biderivation(rank_two, carlitz(f2), SkewMatrix.identity(f2, 2))
    with pytest.raises(DimensionError):
        inner(SkewMatrix.identity(f2, 2), rank_two, carlitz(f2))


def test_inner(f2, rank_two):
    C = carlitz(f2)
    zero = inner(SkewMatrix.zero(f2, 1, 1), C, C)
    assert zero == Biderivation.zero(C, C)
    assert inner(value("T", f2), C, C).value == value("(T+T^2)*tau", f2)
    c = k("T+1", f2)
    u = SkewMatrix.from_poly(SkewPoly.monomial(c, 2))
    assert inner(u, rank_two, C).value == SkewMatrix.from_poly(bonn_inner(rank_two, c, 2))


def test_baer_sum(f2):
    C = carlitz(f2)
    d1 = Biderivation(C, C, value("tau", f2))
    d2 = Biderivation(C, C, value("T*tau", f2))
    assert d1 + Biderivation.zero(C, C) == d1
    assert (d1 + (-d1)).value.is_zero()
    assert baer_sum(d1, d2).value == value("(1+T)*tau", f2)


def test_baer_sum_needs_same_modules(f2, rank_two):
    C = carlitz(f2)
    with pytest.raises(DimensionError):
        Biderivation(C, C, value("tau", f2)) + Biderivation(rank_two, C, value("tau", f2))


def test_t_actions(f2, rank_two):
    C = carlitz(f2)
    one = parse_t_poly("1", f2)
    t = parse_t_poly("t", f2)
    delta = Biderivation(C, C, value("tau", f2))
    assert t_action_right(delta, one) == delta
    assert t_action_left(one, delta) == delta
    unit = Biderivation(C, C, value("1", f2))
    assert t_action_right(unit, t).value == C.phi_t
    assert t_action_left(t, unit).value == C.phi_t
    tau = Biderivation(rank_two, C, value("tau", f2))
    difference = t_action_right(tau, t) - t_action_left(t, tau)
    assert difference == inner(tau.value, rank_two, C)


def test_der0(f2):
    C = carlitz(f2)
    assert is_der0(Biderivation(C, C, value("T*tau + tau^3", f2)))
    assert not is_der0(Biderivation(C, C, value("1", f2)))
    assert is_der0(Biderivation.zero(C, C))
    assert is_strictly_inner(value("tau", f2))
    assert not is_strictly_inner(value("T", f2))


def test_extension_matrix(f2, rank_two):
    C = carlitz(f2)
    split = extension_matrix(Biderivation.zero(C, C))
    assert split.phi_t == parse_skew_matrix([["T+tau", "0"], ["0", "T+tau"]], f2)
    twisted = extension_matrix(Biderivation(C, C, value("tau", f2)))
    assert twisted.phi_t == parse_skew_matrix([["T+tau", "0"], ["tau", "T+tau"]], f2)
    ext = extension_matrix(Biderivation(rank_two, C, value("1", f2)))
    assert ext.dim == 2
    assert ext.phi_t[1, 0] == SkewPoly.one(f2)


def test_split_check(f2):
    C = carlitz(f2)
    u = value("T", f2)
    assert split_check(Biderivation(C, C, value("(T+T^2)*tau", f2)), u)
    assert not split_check(Biderivation(C, C, value("tau", f2)), SkewMatrix.zero(f2, 1, 1))
    with pytest.raises(DimensionError):
        split_check(Biderivation(C, C, value("tau", f2)), SkewMatrix.identity(f2, 2))


@pytest.mark.parametrize("kind", KINDS)
@settings(max_examples=15, deadline=None)
@given(seed=seeds)
def test_cocycle_law(kind, seed):
    config = FqConfig.from_q(3)
    rng = make_rng(seed)
    _, delta = random_biderivation(rng, config, kind, max_rank=2, max_degree=2)
    a, b = random_t_poly(rng, config, 1), random_t_poly(rng, config, 1)
    lhs = delta_eval(delta, a * b)
    rhs = phi_eval(delta.target, a) * delta_eval(delta, b)
    rhs = rhs + delta_eval(delta, a) * phi_eval(delta.source, b)
    assert lhs == rhs


@pytest.mark.parametrize("kind", KINDS)
@settings(max_examples=10, deadline=None)
@given(seed=seeds)
def test_inner_biderivations_split(kind, seed):
    config = FqConfig.from_q(2)
    rng = make_rng(seed)
    _, delta = random_biderivation(rng, config, kind, max_rank=2, max_degree=2)
    u = random_skew_matrix(rng, config, *delta.value.shape, 2)
    derivation = inner(u, delta.source, delta.target)
    assert split_check(derivation, u)
    b = random_t_poly(rng, config, 2)
    difference = t_action_right(delta, b) - t_action_left(b, delta)
    assert difference == inner(delta_eval(delta, b), delta.source, delta.target)
