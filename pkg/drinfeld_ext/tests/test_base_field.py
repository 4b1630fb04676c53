import pytest
from hypothesis import given, settings

from drinfeld_ext.base_field import (
    ABORT_DEGREE_ENV,
    FqConfig,
    abort_degree,
    degree_guard,
    format_k_element,
    frobenius,
    normalize,
    parse_k_element,
    parse_t_poly,
    split_prime_power,
)
from drinfeld_ext.exceptions import DegreeGuardError, FieldError, ParseError
from drinfeld_ext.tests.conftest import k, seeds
from drinfeld_ext.verify import make_rng, random_k


def test_split_prime_power():
    assert split_prime_power(2) == (2, 1)
    assert split_prime_power(9) == (3, 2)
    assert split_prime_power(8) == (2, 3)
    with pytest.raises(FieldError):
        split_prime_power(6)
    with pytest.raises(FieldError):
        split_prime_power(1)


def test_builtin_and_custom_moduli():
    f4 = FqConfig.from_q(4)
    assert f4.modulus_str() == "1+x+x^2"
    assert FqConfig.from_q(4, "x^2+x+1") == f4
    with pytest.raises(FieldError):
        FqConfig.from_q(25)
    with pytest.raises(FieldError):
        # x^2 + 1 = (x + 1)^2 over F_2
        FqConfig.from_q(4, "x^2+1")
    with pytest.raises(FieldError):
        FqConfig.from_q(3, "x+1")


def test_normalize_cancels_common_factor(f3):
    num = f3.poly([1, 0, 2])  # theta^2 - 1
    den = f3.poly([1, 2])  # theta - 1
    x = normalize(num, den, f3)
    assert x.num == f3.poly([1, 1])
    assert x.den == f3.poly([1])


def test_normalize_zero_and_monic_denominator(f3):
    zero = normalize(f3.poly([0]), f3.poly([1, 0]), f3)
    assert zero.is_zero() and zero.den == f3.poly([1])
    x = normalize(f3.poly([2, 0]), f3.poly([2]), f3)
    assert x == f3.theta()


def test_division_by_zero(f3):
    with pytest.raises(FieldError, match="division by zero in K"):
        f3.theta() / f3.zero()
    with pytest.raises(FieldError, match="division by zero in K"):
        parse_k_element("1/0", f3)


def test_frobenius_examples(f2, f3):
    assert frobenius(k("T+1", f3), 1) == k("T^3+1", f3)
    assert frobenius(k("1/(T+1)", f2), 2) == k("1/(T^4+1)", f2)
    x = k("(T^2+T)/(T+1)", f3)
    assert frobenius(x, 0) == x


def test_parse_examples(f2, f3):
    x = parse_k_element("T^2+1", f2)
    assert x.num == f2.poly([1, 0, 1]) and x.den == f2.poly([1])
    y = parse_k_element("(T+2)/(T)", f3)
    assert y.num == f3.poly([1, 2]) and y.den == f3.poly([1, 0])


def test_parse_errors_carry_position(f2):
    with pytest.raises(ParseError) as info:
        parse_k_element("T+2", f2)
    assert info.value.position == 2
    with pytest.raises(ParseError, match="unknown symbol"):
        parse_k_element("T+x", f2)
    with pytest.raises(ParseError):
        parse_k_element("(T+1", f2)
    with pytest.raises(ParseError):
        parse_k_element("", f2)


def test_generator_only_for_extensions(f2, f4):
    g = parse_k_element("g", f4)
    assert g * g == g + 1
    with pytest.raises(ParseError):
        parse_k_element("g", f2)


def test_printing(f3, f4):
    assert format_k_element(k("T^2+2*T+1", f3)) == "1+2*T+T^2"
    assert format_k_element(k("1/(T+1)", f3)) == "(1)/(1+T)"
    assert format_k_element(k("g*T", f4)) == "g*T"
    assert format_k_element(k("(g+1)*T", f4)) == "(1+g)*T"


def test_frobenius_root(f2, f3):
    x = k("T+1", f3)
    assert x.frobenius(2).frobenius_root(2) == x
    assert k("T", f2).frobenius_root(1) is None
    assert k("1", f2).frobenius_root(3) == f2.one()


def test_nth_root(f3):
    x = k("(T+1)/T", f3)
    assert (x**4).nth_root(4) ** 4 == x**4
    assert k("T", f3).nth_root(2) is None
    with pytest.raises(FieldError):
        x.nth_root(3)


def test_degree_guard(f2):
    with degree_guard(8):
        assert k("T^8", f2).theta_degree == 8
        with pytest.raises(DegreeGuardError):
            k("T", f2).frobenius(4)


def test_no_degree_cap_outside_guard(f2, monkeypatch):
    monkeypatch.setenv(ABORT_DEGREE_ENV, "1")
    assert abort_degree() is None
    assert k("T", f2).frobenius(14).theta_degree == 2**14
    with degree_guard(3):
        assert abort_degree() == 3
    assert abort_degree() is None


def test_parse_t_poly(f3, f4):
    assert parse_t_poly("t^2+2*t+1", f3) == f3.poly([1, 2, 1])
    g = f4.generator()
    assert parse_t_poly("g*t+1", f4) == f4.poly([int(g), 1])


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_field_axioms(seed):
    config = FqConfig.from_q(3)
    rng = make_rng(seed)
    x, y, z = (random_k(rng, config) for _ in range(3))
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == config.zero()
    if x:
        assert x * x.inverse() == config.one()
    assert (x * y).frobenius(1) == x.frobenius(1) * y.frobenius(1)
    assert (x + y).frobenius(2) == x.frobenius(2) + y.frobenius(2)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_print_then_parse(seed):
    config = FqConfig.from_q(4)
    x = random_k(make_rng(seed), config)
    assert parse_k_element(format_k_element(x), config) == x
