from fractions import Fraction

import pytest
from hypothesis import given, settings

from drinfeld_ext.base_field import FqConfig, parse_t_poly
from drinfeld_ext.exceptions import DimensionError, NotAMorphismError, NotATModuleError
from drinfeld_ext.skew_poly import SkewMatrix, parse_skew_matrix
from drinfeld_ext.tests.conftest import drinfeld, seeds, sp
from drinfeld_ext.tmodule import (
    UNKNOWN,
    DrinfeldModule,
    TModuleMorphism,
    TModulePresentation,
    carlitz,
    carlitz_tensor,
    is_morphism,
    lie,
    make_drinfeld,
    phi_eval,
    weight,
)
from drinfeld_ext.verify import make_rng, random_drinfeld, random_t_poly


def test_make_drinfeld(f2):
    c = carlitz(f2)
    assert c.rank == 1
    assert c.phi_poly == sp("T+tau", f2)
    E = drinfeld(["T", "1"], f2)
    assert E.phi_poly == sp("T + T*tau + tau^2", f2)
    assert E.a(0) == f2.theta() and E.a(3).is_zero()
    with pytest.raises(NotATModuleError, match="not a Drinfeld module"):
        drinfeld(["1", "0"], f2)
    with pytest.raises(NotATModuleError):
        make_drinfeld([])


def test_carlitz_tensor(f3):
    assert carlitz_tensor(f3, 1) == carlitz(f3)
    assert carlitz_tensor(f3, 2).phi_t == parse_skew_matrix([["T", "1"], ["tau", "T"]], f3)
    expected = parse_skew_matrix([["T", "1", "0"], ["0", "T", "1"], ["tau", "0", "T"]], f3)
    assert carlitz_tensor(f3, 3).phi_t == expected
    with pytest.raises(DimensionError):
        carlitz_tensor(f3, 0)


def test_presentation_must_be_square_and_nilpotent(f2):
    with pytest.raises(DimensionError):
        TModulePresentation(parse_skew_matrix([["T", "1"]], f2))
    with pytest.raises(NotATModuleError, match="not a t-module"):
        TModulePresentation(parse_skew_matrix([["T", "1"], ["1", "T"]], f2))
    with pytest.raises(NotATModuleError):
        TModulePresentation(parse_skew_matrix([["1+tau"]], f2))


def test_phi_eval(f2):
    C = carlitz(f2)
    assert phi_eval(C, parse_t_poly("t", f2)) == C.phi_t
    assert phi_eval(C, parse_t_poly("t^2", f2)) == SkewMatrix.from_poly(
        sp("T^2 + (T+T^2)*tau + tau^2", f2)
    )
    assert phi_eval(carlitz_tensor(f2, 2), parse_t_poly("1", f2)) == SkewMatrix.identity(f2, 2)


def test_is_morphism(f2, rank_two):
    C = carlitz(f2)
    assert is_morphism(SkewMatrix.identity(f2, 1), rank_two, rank_two)
    assert is_morphism(rank_two.phi_t, rank_two, rank_two)
    assert not is_morphism(SkewMatrix.identity(f2, 1), C, rank_two)
    with pytest.raises(NotAMorphismError):
        TModuleMorphism(C, rank_two, SkewMatrix.identity(f2, 1))
    with pytest.raises(DimensionError):
        is_morphism(SkewMatrix.identity(f2, 2), C, C)


def test_compose(f3):
    E = drinfeld(["T", "1"], f3)
    t = TModuleMorphism(E, E, E.phi_t)
    scalar = TModuleMorphism(E, E, SkewMatrix.identity(f3, 1).scale(f3.constant(2)))
    assert scalar.compose(t).beta == phi_eval(E, parse_t_poly("2*t", f3))


def test_lie(f3):
    assert lie(carlitz(f3)) == [[f3.theta()]]
    assert lie(carlitz_tensor(f3, 2)) == [[f3.theta(), f3.one()], [f3.zero(), f3.theta()]]
    assert lie(drinfeld(["1", "T", "1"], f3)) == [[f3.theta()]]


def test_weight(f2):
    assert weight(carlitz(f2)) == 1
    assert weight(drinfeld(["1", "1", "1"], f2)) == Fraction(1, 3)
    assert weight(carlitz_tensor(f2, 4)) == 4
    assert weight(TModulePresentation(parse_skew_matrix([["T", "1"], ["0", "T"]], f2))) == UNKNOWN


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_phi_is_a_ring_map(seed):
    config = FqConfig.from_q(3)
    rng = make_rng(seed)
    E = random_drinfeld(rng, config, max_rank=3)
    a, b = random_t_poly(rng, config, 2), random_t_poly(rng, config, 2)
    assert isinstance(E, DrinfeldModule)
    assert phi_eval(E, a * b) == phi_eval(E, a) * phi_eval(E, b)
    assert phi_eval(E, a + b) == phi_eval(E, a) + phi_eval(E, b)
    assert phi_eval(E, a) * phi_eval(E, b) == phi_eval(E, b) * phi_eval(E, a)
