"""Elementary number theory helpers used throughout the package.

Exact arithmetic only. Rational scalars are `fractions.Fraction`, which
already guarantees lowest terms and a positive denominator, so it serves as
the package-wide Rational type unchanged.
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers n.

    Extends the Jacobi symbol by (a/2) = 0 for even a, +1 for a = +-1 mod 8,
    -1 for a = +-3 mod 8, together with (a/-1) = sign handling and
    (a/0) = 1 iff a = +-1.
    """
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    # strip the even part of n
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 == 0:
        k = 1
    else:
        k = 1 if a % 8 in (1, 7) else -1
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    # n is now odd and positive: quadratic reciprocity loop
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                k = -k
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            k = -k
        a %= n
    return k if n == 1 else 0


def vp(x: int | Fraction, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    if p < 2:
        raise ValueError("p must be at least 2")
    if x == 0:
        raise ValueError("the zero element has no finite valuation")
    if isinstance(x, Fraction):
        return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)
    return _vp_int(int(x), p)


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def is_inert(D: int, p: int) -> bool:
    """True iff the prime p is inert in Q(sqrt(D)), i.e. (D/p) = -1."""
    return kronecker(D, p) == -1


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound, by sieve."""
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, bound + 1) if sieve[i]]


def smallest_factor_table(bound: int) -> list[int]:
    """spf[n] = smallest prime factor of n, for 0 <= n <= bound (spf[0..1] = 0)."""
    spf = list(range(bound + 1))
    if bound >= 1:
        spf[1] = 0
    for i in range(2, int(bound ** 0.5) + 1):
        if spf[i] == i:
            for j in range(i * i, bound + 1, i):
                if spf[j] == j:
                    spf[j] = i
    return spf


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (small inputs only)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def divisors(m: int) -> list[int]:
    """Positive divisors of m > 0, ascending."""
    if m <= 0:
        raise ValueError("divisors are defined for positive integers")
    small, large = [], []
    f = 1
    while f * f <= m:
        if m % f == 0:
            small.append(f)
            if f != m // f:
                large.append(m // f)
        f += 1
    return small + large[::-1]


def ceil_div(a: int, b: int) -> int:
    """Ceiling of a/b for b > 0, exact on negatives."""
    return -((-a) // b)
