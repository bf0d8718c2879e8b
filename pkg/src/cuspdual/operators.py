"""Coefficient operators on q-series: U(m), V(m), theta powers, Hecke.

All operators act on exact QSeries values and propagate truncation
precision explicitly:

  U(m):  a(n) -> a(mn)           precision ceil(P/m)
  V(m):  a(n) -> a(n/m)          precision m(P-1)+1
  theta: a(n) -> n a(n)          precision unchanged
  T_k(m): a(n) -> sum_{d | gcd(m,|n|)} d^{k-1} a(mn/d^2), precision ceil(P/m)

The Hecke sum runs over divisors of gcd(m, |n|) so that negative exponents
of weakly holomorphic inputs are handled; for n = 0 every divisor of m
contributes. Weight k = 0 is allowed, in which case d^{k-1} is the exact
rational 1/d.
"""

from __future__ import annotations

from fractions import Fraction

from .numthy import ceil_div, divisors
from .qseries import QSeries

__all__ = ["U", "V", "theta_pow", "hecke_general", "hecke_prime_power"]


def U(f: QSeries, m: int) -> QSeries:
    """Pick every m-th coefficient: sum a(mn) q^n."""
    if m < 1:
        raise ValueError("U(m) needs m >= 1")
    prec = ceil_div(f.precision, m)
    coeffs = {}
    for e, c in f.items():
        if e % m == 0:
            coeffs[e // m] = c
    return QSeries(coeffs, prec)


def V(f: QSeries, m: int) -> QSeries:
    """Substitute q -> q^m: sum a(n) q^{mn}."""
    if m < 1:
        raise ValueError("V(m) needs m >= 1")
    prec = m * (f.precision - 1) + 1
    return QSeries({m * e: c for e, c in f.items()}, prec)


def theta_pow(f: QSeries, j: int) -> QSeries:
    """j-th power of theta = q d/dq: multiplies each coefficient by n^j."""
    if j < 0:
        raise ValueError("theta_pow needs j >= 0")
    if j == 0:
        return f
    return QSeries({e: (e ** j) * c for e, c in f.items()}, f.precision)


def hecke_general(f: QSeries, k: int, m: int) -> QSeries:
    """Weight-k Hecke operator T_k(m) for m >= 1, on Laurent q-series."""
    if m < 1:
        raise ValueError("hecke_general needs m >= 1")
    prec = ceil_div(f.precision, m)
    v = f.order
    lo = v * m if v < 0 else ceil_div(v, m)
    ds = divisors(m)
    coeffs = {}
    for n in range(lo, prec):
        s = Fraction(0)
        for d in ds:
            if n != 0 and n % d:
                continue
            e = (m // d) * (n // d) if n else 0
            c = f.coeff(e)
            if c:
                s += Fraction(d) ** (k - 1) * c
        if s:
            coeffs[n] = s
    return QSeries(coeffs, prec)


def hecke_prime_power(f: QSeries, k: int, p: int, n: int) -> QSeries:
    """T_k(p^n) assembled as sum_{j=0}^{n} p^{(k-1)j} f|U(p^{n-j})|V(p^j)."""
    if n < 0:
        raise ValueError("hecke_prime_power needs n >= 0")
    if p < 2:
        raise ValueError("p must be a prime >= 2")
    acc = None
    for j in range(n + 1):
        term = V(U(f, p ** (n - j)), p ** j).scale(Fraction(p) ** ((k - 1) * j))
        acc = term if acc is None else acc + term
    return acc
