"""Eta-quotient expansion against a slow independent product oracle."""

from fractions import Fraction

import pytest

from cuspdual.eta import (
    EtaQuotient,
    FractionalOrderError,
    euler_product,
    expand,
    format_eta_quotient,
    parse_eta_quotient,
    q_order,
)
from cuspdual.qseries import QSeries
from helpers import eta_unit_brute, rng


def test_euler_product_pentagonal_signs():
    # 1 - q - q^2 + q^5 + q^7 - q^12 - q^15 + q^22 + q^26 - ...
    e = euler_product(30)
    expected = {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1, 15: -1, 22: 1, 26: 1}
    assert dict(e.items()) == {k: Fraction(v) for k, v in expected.items()}


def test_euler_product_matches_brute_force():
    got = euler_product(80)
    want = eta_unit_brute(1, 1, 80)
    assert [got.coeff(n) for n in range(80)] == want


def test_unit_part_of_quotients_matches_brute_force():
    cases = [
        (((3, 2), (9, 2)), 24),       # sigma 24, order 1
        (((1, 1), (49, -1)), -48),    # order -2
        (((4, 2), (8, 2)), 24),
        (((3, 8),), 24),
        (((6, 4),), 24),
    ]
    for factors, sigma in cases:
        eq = EtaQuotient(factors)
        assert eq.sigma == sigma
        prec = 40
        f = expand(eq, prec)
        order = q_order(eq)
        unit = [Fraction(0)] * (prec - order)
        unit[0] = Fraction(1)
        for delta, r in factors:
            part = eta_unit_brute(delta, r, prec - order)
            conv = [Fraction(0)] * (prec - order)
            for i, a in enumerate(unit):
                if a:
                    for j, b in enumerate(part):
                        if b and i + j < len(conv):
                            conv[i + j] += a * b
            unit = conv
        assert [f.coeff(order + n) for n in range(prec - order)] == unit


def test_expand_respects_q_order():
    eq = EtaQuotient(((3, 2), (9, 2)))  # leading term q^1
    f = expand(eq, 12)
    assert f.order == 1
    assert f.coeff(1) == 1
    assert f.precision == 12

    neg = EtaQuotient(((1, 1), (49, -1)))
    g = expand(neg, 8)
    assert g.order == -2
    assert g.coeff(-2) == 1


def test_fractional_order_rejected():
    eq = EtaQuotient(((1, 2),))  # sigma 2, weight 1
    with pytest.raises(FractionalOrderError):
        q_order(eq)
    with pytest.raises(FractionalOrderError):
        expand(eq, 10)


def test_half_integral_weight_rejected():
    eq = EtaQuotient(((24, 1),))  # sigma 24 but odd exponent sum
    with pytest.raises(ValueError, match="weight"):
        expand(eq, 10)


def test_quotient_validation():
    with pytest.raises(ValueError):
        EtaQuotient(((0, 2),))
    with pytest.raises(ValueError):
        EtaQuotient(((3, 0),))
    with pytest.raises(ValueError):
        EtaQuotient(((3, 1), (3, 1)))
    eq = EtaQuotient(((9, 2), (3, 4)))
    assert eq.factors == ((3, 4), (9, 2))  # stored ascending
    assert eq.weight == 3


def test_parse_format_round_trip():
    texts = [
        "eta(3)^2*eta(9)^2",
        "eta(1)*eta(49)^-1",
        "eta(6)^4",
        "eta(2)^-1*eta(4)^7*eta(8)^-2",
    ]
    for text in texts:
        eq = parse_eta_quotient(text)
        assert format_eta_quotient(eq) == text
    r = rng(77)
    for _ in range(50):
        scales = r.sample(range(1, 30), r.randint(1, 4))
        factors = tuple((d, r.choice([-3, -2, -1, 1, 2, 5])) for d in sorted(scales))
        eq = EtaQuotient(factors)
        assert parse_eta_quotient(format_eta_quotient(eq)) == eq


def test_parse_rejects_garbage():
    for bad in ["", "eta(3)^", "eta(3)eta(9)", "eta(3)*", "*eta(3)", "eta(-3)", "3^2"]:
        with pytest.raises(ValueError):
            parse_eta_quotient(bad)


def test_expansion_is_integral_for_integer_exponents():
    eq = EtaQuotient(((3, 3), (27, -3)))
    f = expand(eq, 60)
    assert f.is_integral()
    assert isinstance(f, QSeries)
