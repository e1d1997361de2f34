# Author: PB & Claude
# Maintainer: PB
# Original date: 2025.05.13
# License: (c) HRDAG, 2025, GPL-2 or newer
#
# ------
# tests/unit/test_hv.py
"""Tests for H*V = F2[t1..tr], its Steenrod action and linear forms."""

import pytest

from hvmod.hv import (
    LinearForm,
    PolyElement,
    Representation,
    dickson_top,
    divide_linear,
    euler_class,
    factor_linear,
    format_poly,
    monomials_of_degree,
    one_plus_product,
    parse_linear_form,
    parse_monomial,
    parse_poly,
    sq_on_poly,
)

T1 = LinearForm((1, 0))
T2 = LinearForm((0, 1))
T12 = LinearForm((1, 1))


def t(n: int) -> PolyElement:
    return PolyElement.monomial((n,))


@pytest.mark.parametrize("k, n, expected", [
    (1, 3, 4),
    (2, 3, 5),
    (3, 3, 6),
    (1, 2, None),
    (2, 6, 8),
    (0, 5, 5),
])
def test_sq_on_powers_of_t(k, n, expected):
    """Sq^k t^n = C(n, k) t^(n+k)."""
    result = sq_on_poly(k, t(n))
    if expected is None:
        assert result.is_zero()
    else:
        assert result == t(expected)


def test_sq_cartan_on_product():
    p = parse_poly("t1*t2", 2)
    assert sq_on_poly(1, p) == parse_poly("t1^2*t2 + t1*t2^2", 2)
    assert sq_on_poly(2, p) == parse_poly("t1^2*t2^2", 2)


def test_sq_negative_rejected():
    with pytest.raises(ValueError):
        sq_on_poly(-1, t(1))


def test_monomials_of_degree():
    assert monomials_of_degree(2, 2) == ((2, 0), (1, 1), (0, 2))
    assert monomials_of_degree(1, 4) == ((4,),)
    assert monomials_of_degree(3, -1) == ()


def test_poly_arithmetic():
    a = parse_poly("t1 + t2", 2)
    assert a * a == parse_poly("t1^2 + t2^2", 2)
    assert (a + a).is_zero()
    assert (a ** 0) == PolyElement.one(2)
    assert PolyElement.zero(2).degree is None


def test_inhomogeneous_poly_rejected():
    with pytest.raises(ValueError):
        parse_poly("t1^2 + t2", 2)


def test_parse_monomial():
    assert parse_monomial("t^3", 1) == (3,)
    assert parse_monomial("t1*t2^2", 2) == (1, 2)
    assert parse_monomial("1", 2) == (0, 0)
    with pytest.raises(ValueError):
        parse_monomial("t", 2)
    with pytest.raises(ValueError):
        parse_monomial("t3", 2)
    with pytest.raises(ValueError):
        parse_monomial("s", 1)


def test_linear_forms():
    assert LinearForm.all_forms(2) == (T1, T2, T12)
    assert str(T12) == "t1+t2"
    assert str(LinearForm((1,))) == "t"
    assert parse_linear_form("t1 + t2", 2) == T12
    with pytest.raises(ValueError):
        LinearForm((0, 0))
    with pytest.raises(ValueError):
        parse_linear_form("t1*t2", 2)


def test_dickson_top():
    assert dickson_top(1).poly == t(1)
    c2 = dickson_top(2).poly
    assert format_poly(c2) == "t1^2*t2 + t1*t2^2"
    assert c2.degree == 3


def test_divide_linear():
    c2 = dickson_top(2).poly
    assert divide_linear(c2, T12) == parse_poly("t1*t2", 2)
    assert divide_linear(parse_poly("t1^2", 2), T2) is None
    assert divide_linear(PolyElement.zero(2), T1).is_zero()


def test_factor_linear_product_of_forms():
    c2 = dickson_top(2).poly
    assert factor_linear(c2) == ((T1, 1), (T2, 1), (T12, 1))
    assert factor_linear(t(3)) == ((LinearForm((1,)), 3),)


def test_factor_linear_irreducible():
    assert factor_linear(parse_poly("t1^2 + t1*t2 + t2^2", 2)) is None
    with pytest.raises(ValueError):
        factor_linear(PolyElement.zero(1))


def test_one_plus_product():
    pieces = one_plus_product(((LinearForm((1,)), 2),), 1)
    assert pieces == (PolyElement.one(1), PolyElement.zero(1), t(2))
    pieces = one_plus_product(((T1, 1), (T2, 1)), 2)
    assert [format_poly(p) for p in pieces] == ["1", "t1 + t2", "t1*t2"]


def test_euler_class():
    rho = Representation(2, ((1, 0), (1, 1)))
    assert euler_class(rho) == parse_poly("t1^2 + t1*t2", 2)
    assert euler_class(Representation(1, ((1,), (0,)))).is_zero()
    with pytest.raises(ValueError):
        Representation(2, ((1,),))
