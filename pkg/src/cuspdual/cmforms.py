"""The five CM cusp forms g and their exact q-expansions.

Four of the forms are eta quotients; the level-49 form is assembled from
point counts of the conductor-49 elliptic curve y^2 + xy = x^3 - x^2 - 2x - 1
(LMFDB 49.a4): a_p = p + 1 - #E(F_p) for good p, a_7 = 0, extended to all
indices by Hecke multiplicativity.

Each form's expansion is cached per space; the cache grows by doubling and
is guarded by a lock (writers serialize, lock-free readers see only
immutable published series).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

from .eta import EtaQuotient, expand
from .numthy import is_inert, kronecker, smallest_factor_table
from .qseries import QSeries
from .spaces import CM_PAIRS

__all__ = [
    "CMForm",
    "CURVE_49",
    "REGISTRY",
    "cm_form",
    "discriminant",
    "g_expansion",
    "curve_ap",
    "curve_point_count",
    "hecke_extend",
    "cm_support_check",
    "inert_primes",
]

# Weierstrass coefficients (a1, a2, a3, a4, a6) of the level-49 curve
CURVE_49 = (1, -1, 0, -2, -1)


def curve_point_count(p: int) -> int:
    """#E(F_p) including the point at infinity, by direct enumeration mod p."""
    a1, a2, a3, a4, a6 = CURVE_49
    count = 1
    for x in range(p):
        rhs = (x * x * x + a2 * x * x + a4 * x + a6) % p
        for y in range(p):
            if (y * y + a1 * x * y + a3 * y) % p == rhs:
                count += 1
    return count


@lru_cache(maxsize=None)
def curve_ap(p: int) -> int:
    """Trace of Frobenius a_p of the level-49 curve.

    For odd good p, completing the square turns the affine count into a
    character sum: #affine = p + sum_x chi(4x^3 - 3x^2 - 8x - 4), with chi
    the quadratic character mod p read off a squares table, so
    a_p = -sum_x chi(...). p = 2 is counted directly and a_7 = 0 (bad
    reduction).
    """
    if p == 7:
        return 0
    if p == 2:
        return p + 1 - curve_point_count(p)
    square = bytearray(p)
    for t in range(p):
        square[t * t % p] = 1
    s = 0
    for x in range(p):
        u = (4 * x * x * x - 3 * x * x - 8 * x - 4) % p
        if u:
            s += 1 if square[u] else -1
    return -s


def hecke_extend(
    ap: Callable[[int], int] | Mapping[int, int],
    k: int,
    precision: int,
    bad_primes: frozenset[int] = frozenset(),
) -> QSeries:
    """Expand a normalized weight-k eigenform from its prime coefficients.

    a(1) = 1, a(mn) = a(m)a(n) for coprime m, n, and at good primes
    a(p^{r+1}) = a(p) a(p^r) - p^{k-1} a(p^{r-1}); at bad primes
    a(p^r) = a(p)^r.
    """
    if precision < 2:
        return QSeries({}, precision)
    get = ap.__getitem__ if isinstance(ap, Mapping) else ap
    spf = smallest_factor_table(precision - 1)
    a = [0] * precision
    a[1] = 1
    for n in range(2, precision):
        p = spf[n]
        pe, rest = p, n // p
        while rest % p == 0:
            pe *= p
            rest //= p
        if rest > 1:
            a[n] = a[pe] * a[rest]
            continue
        # n = p^e is a prime power
        if n == p:
            a[n] = get(p)
        elif p in bad_primes:
            a[n] = get(p) ** (_exponent_of(n, p))
        else:
            a[n] = get(p) * a[n // p] - p ** (k - 1) * a[n // (p * p)]
    return QSeries({n: a[n] for n in range(1, precision) if a[n]}, precision)


def _exponent_of(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


@dataclass(frozen=True)
class CMForm:
    """A CM cusp form: its space, CM discriminant, and construction."""

    space: tuple[int, int]
    D: int
    eta: EtaQuotient | None = None
    curve: tuple[int, int, int, int, int] | None = None
    lmfdb: str = ""

    def expansion(self, precision: int) -> QSeries:
        if self.eta is not None:
            return expand(self.eta, precision)
        k = self.space[0]
        return hecke_extend(curve_ap, k, precision, bad_primes=frozenset({7}))


REGISTRY: dict[tuple[int, int], CMForm] = {
    (2, 27): CMForm((2, 27), -3, eta=EtaQuotient(((3, 2), (9, 2))), lmfdb="27.2.a.a"),
    (2, 32): CMForm((2, 32), -4, eta=EtaQuotient(((4, 2), (8, 2))), lmfdb="32.2.a.a"),
    (2, 36): CMForm((2, 36), -3, eta=EtaQuotient(((6, 4),)), lmfdb="36.2.a.a"),
    (2, 49): CMForm((2, 49), -7, curve=CURVE_49, lmfdb="49.2.a.a"),
    (4, 9): CMForm((4, 9), -3, eta=EtaQuotient(((3, 8),)), lmfdb="9.4.a.a"),
}

assert tuple(REGISTRY) == CM_PAIRS


def cm_form(space: tuple[int, int]) -> CMForm:
    try:
        return REGISTRY[space]
    except KeyError:
        raise ValueError(
            f"space {space} is not one of the five CM spaces {CM_PAIRS}"
        ) from None


def discriminant(space: tuple[int, int]) -> int:
    return cm_form(space).D


_cache_lock = threading.Lock()
_expansions: dict[tuple[int, int], QSeries] = {}


def g_expansion(space: tuple[int, int], precision: int) -> QSeries:
    """The form g of the space, to at least the requested precision.

    Cached per space; on a miss the cache grows to max(request, double the
    held precision) so repeated ascending requests stay cheap.
    """
    form = cm_form(space)
    cached = _expansions.get(space)
    if cached is not None and cached.precision >= precision:
        return cached
    with _cache_lock:
        cached = _expansions.get(space)
        if cached is None or cached.precision < precision:
            target = precision
            if cached is not None:
                target = max(precision, 2 * cached.precision)
            _expansions[space] = form.expansion(target)
        return _expansions[space]


def reset_cache() -> None:
    with _cache_lock:
        _expansions.clear()


def inert_primes(
    space: tuple[int, int], bound: int, include_two: bool = False
) -> list[int]:
    """Primes p <= bound, p coprime to N, inert in the CM field of the space.

    Odd primes only unless include_two is set."""
    from .numthy import primes_up_to

    k, N = space
    D = discriminant(space)
    out = []
    for p in primes_up_to(bound):
        if p == 2 and not include_two:
            continue
        if N % p == 0:
            continue
        if is_inert(D, p):
            out.append(p)
    return out


def cm_support_check(
    space: tuple[int, int], bound: int
) -> list[int]:
    """Exponents 2 <= n <= bound where (D/n) = -1 but a(n) != 0.

    Empty means the CM vanishing pattern holds on the window."""
    D = discriminant(space)
    g = g_expansion(space, bound + 1)
    return [
        n
        for n in range(2, bound + 1)
        if kronecker(D, n) == -1 and g.coeff(n) != 0
    ]
