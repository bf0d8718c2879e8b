"""Shared test utilities: seeded series generators and brute-force oracles."""

import random
from fractions import Fraction

from cuspdual.qseries import QSeries

SPACES = ((2, 27), (2, 32), (2, 36), (2, 49), (4, 9))


def rng(seed):
    return random.Random(seed)


def random_series(r, precision, lo=-4, density=0.6, denom=1):
    """Sparse random Laurent series with support in [lo, precision)."""
    entries = {}
    for e in range(lo, precision):
        if r.random() < density:
            num = r.randint(-9, 9)
            if num:
                entries[e] = Fraction(num, denom if denom == 1 else r.randint(1, denom))
    return QSeries(entries, precision)


def random_integral_series(r, precision, lo=0, density=0.7):
    return random_series(r, precision, lo=lo, density=density, denom=1)


def naive_product(f, g):
    """Convolution computed term by term, ignoring precision bookkeeping."""
    prec = min(f.precision + g.order, g.precision + f.order)
    entries = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = e1 + e2
            if e < prec:
                entries[e] = entries.get(e, Fraction(0)) + c1 * c2
    return QSeries(entries, prec)


def eta_unit_brute(delta, exponent, precision):
    """Coefficients of prod_{n>=1} (1 - q^{delta n})^exponent by repeated
    polynomial multiplication. Slow but independent of the pentagonal-number
    shortcut used by the package."""
    coeffs = [Fraction(0)] * precision
    coeffs[0] = Fraction(1)
    factors = abs(exponent)
    for _ in range(factors):
        for n in range(1, precision // delta + 1):
            shift = delta * n
            if exponent > 0:
                # multiply by (1 - q^shift)
                for e in range(precision - 1, shift - 1, -1):
                    coeffs[e] -= coeffs[e - shift]
            else:
                # divide by (1 - q^shift): multiply by 1 + q^s + q^2s + ...
                for e in range(shift, precision):
                    coeffs[e] += coeffs[e - shift]
    return coeffs
