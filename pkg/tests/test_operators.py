"""U, V, theta, and Hecke operators: precision rules and operator identities."""

from fractions import Fraction

import pytest

from cuspdual.numthy import ceil_div
from cuspdual.operators import U, V, hecke_general, hecke_prime_power, theta_pow
from cuspdual.qseries import QSeries
from helpers import random_series, rng


def hecke_oracle(f, k, m):
    """Divisor-sum definition evaluated directly, one coefficient at a time."""
    prec = ceil_div(f.precision, m)
    lo = f.order * m if f.order < 0 else 0
    out = {}
    for n in range(lo, prec):
        total = Fraction(0)
        for d in range(1, m + 1):
            if m % d:
                continue
            if n != 0 and abs(n) % d:
                continue
            e = m * n // (d * d)
            if f.order <= e < f.precision:
                total += Fraction(d) ** (k - 1) * f.coeff(e)
        if total:
            out[n] = total
    return QSeries(out, prec)


def test_U_picks_arithmetic_progression():
    f = QSeries({-2: 5, 0: 1, 3: 7, 4: -1, 6: 2}, 10)
    u = U(f, 2)
    assert u.precision == 5
    assert dict(u.items()) == {-1: 5, 0: 1, 2: -1, 3: 2}


def test_V_spreads_exponents():
    f = QSeries({-1: 2, 3: 4}, 5)
    v = V(f, 3)
    assert v.precision == 3 * 4 + 1
    assert dict(v.items()) == {-3: 2, 9: 4}


def test_UV_round_trip_exact():
    r = rng(2001)
    for _ in range(40):
        f = random_series(r, r.randint(4, 12), denom=3)
        m = r.randint(1, 6)
        back = U(V(f, m), m)
        assert back == f  # V then U restores both coefficients and precision


def test_VU_keeps_multiples_only():
    f = QSeries({-2: 1, 1: 3, 2: 4, 4: 5}, 6)
    g = V(U(f, 2), 2)
    assert dict(g.items()) == {-2: 1, 2: 4, 4: 5}


def test_U_composes_multiplicatively():
    r = rng(2002)
    for _ in range(40):
        f = random_series(r, r.randint(6, 20))
        m1, m2 = r.randint(1, 4), r.randint(1, 4)
        assert U(U(f, m1), m2) == U(f, m1 * m2)


def test_operator_argument_validation():
    f = QSeries({0: 1}, 4)
    with pytest.raises(ValueError):
        U(f, 0)
    with pytest.raises(ValueError):
        V(f, 0)
    with pytest.raises(ValueError):
        theta_pow(f, -1)
    with pytest.raises(ValueError):
        hecke_general(f, 2, 0)
    with pytest.raises(ValueError):
        hecke_prime_power(f, 2, 1, 1)
    with pytest.raises(ValueError):
        hecke_prime_power(f, 2, 3, -1)


def test_theta_pow_scales_by_exponent_powers():
    f = QSeries({-2: 1, 0: 5, 3: 2}, 6)
    assert theta_pow(f, 0) == f
    t1 = theta_pow(f, 1)
    assert dict(t1.items()) == {-2: -2, 3: 6}  # constant term killed
    t3 = theta_pow(f, 3)
    assert t3.coeff(-2) == -8
    assert t3.coeff(3) == 54
    assert t3.precision == 6


def test_hecke_matches_divisor_sum_oracle():
    r = rng(2003)
    for _ in range(60):
        f = random_series(r, r.randint(6, 18), denom=4)
        k = r.choice([0, 2, 4])
        m = r.randint(1, 12)
        assert hecke_general(f, k, m) == hecke_oracle(f, k, m)


def test_hecke_prime_power_agrees_with_general():
    r = rng(2004)
    for _ in range(40):
        f = random_series(r, r.randint(8, 24), denom=3)
        k = r.choice([2, 4])
        p = r.choice([2, 3, 5])
        n = r.randint(0, 2)
        assert hecke_prime_power(f, k, p, n) == hecke_general(f, k, p ** n)


def test_hecke_weight_zero_is_rational():
    # d^{k-1} = 1/d at weight 0 can leave the integers
    f = QSeries({1: 1}, 9)
    t = hecke_general(f, 0, 2)
    assert t.coeff(2) == Fraction(1, 2)  # d = 2 reaches back to a(1)
    assert not t.is_integral()


def test_hecke_composition_identity():
    # T(p) T(p) = T(p^2) + p^(k-1) Id, as operators on Laurent series
    r = rng(2005)
    for _ in range(30):
        f = random_series(r, r.randint(9, 25), denom=2)
        k = r.choice([2, 4])
        p = r.choice([2, 3])
        lhs = hecke_general(hecke_general(f, k, p), k, p)
        rhs = hecke_general(f, k, p * p) + f.truncated(lhs.precision).scale(
            Fraction(p) ** (k - 1)
        )
        assert lhs == rhs


def test_hecke_on_zero_and_constant():
    z = QSeries.zero(12)
    assert hecke_general(z, 2, 6).is_zero()
    c = QSeries.constant(3, 10)
    t = hecke_general(c, 2, 4)
    assert dict(t.items()) == {0: 3 * (1 + 2 + 4)}
