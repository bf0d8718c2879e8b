"""Genus and cusp-form dimension formulas for Gamma_0(N), plus the scan
that singles out the one-dimensional spaces this package studies.

Standard index/elliptic-point/cusp counts:

  mu      = N prod_{p|N} (1 + 1/p)
  eps2    = 0 if 4|N else prod_{p|N} (1 + (-1/p)), with the p = 2 factor 1
  eps3    = 0 if 9|N else prod_{p|N} (1 + (p/3)), with the p = 3 factor 1
  eps_inf = sum_{d|N} phi(gcd(d, N/d))
  genus   = 1 + mu/12 - eps2/4 - eps3/3 - eps_inf/2

and for even k >= 4

  dim S_k = (k-1)(genus-1) + floor(k/4) eps2 + floor(k/3) eps3
            + (k/2 - 1) eps_inf

while dim S_2 = genus and dim S_k = 0 for k <= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .numthy import divisors, kronecker

__all__ = [
    "CM_PAIRS",
    "LevelInvariants",
    "SpaceData",
    "invariants_of",
    "dim_cusp",
    "space_data",
    "scan",
]

# the five one-dimensional spaces carrying the package's CM forms
CM_PAIRS: tuple[tuple[int, int], ...] = (
    (2, 27),
    (2, 32),
    (2, 36),
    (2, 49),
    (4, 9),
)


@dataclass(frozen=True)
class LevelInvariants:
    N: int
    mu: int
    eps2: int
    eps3: int
    eps_inf: int
    genus: int


@dataclass(frozen=True)
class SpaceData:
    k: int
    N: int
    invariants: LevelInvariants
    dim: int

    @property
    def genus(self) -> int:
        return self.invariants.genus

    @property
    def cm(self) -> bool | str:
        """True for the five fixture pairs; "unknown" otherwise (no detection)."""
        return True if (self.k, self.N) in CM_PAIRS else "unknown"


def _prime_factors(N: int) -> list[int]:
    ps = []
    n = N
    f = 2
    while f * f <= n:
        if n % f == 0:
            ps.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        ps.append(n)
    return ps


def _euler_phi(n: int) -> int:
    result = n
    for p in _prime_factors(n):
        result -= result // p
    return result


def invariants_of(N: int) -> LevelInvariants:
    """Index, elliptic point counts, cusp count and genus of X_0(N)."""
    if N < 1:
        raise ValueError("level must be a positive integer")
    ps = _prime_factors(N)
    mu = N
    for p in ps:
        mu += mu // p
    if N % 4 == 0:
        eps2 = 0
    else:
        eps2 = 1
        for p in ps:
            eps2 *= 1 + (0 if p == 2 else kronecker(-1, p))
    if N % 9 == 0:
        eps3 = 0
    else:
        eps3 = 1
        for p in ps:
            eps3 *= 1 + (0 if p == 3 else kronecker(p, 3))
    eps_inf = sum(_euler_phi(gcd(d, N // d)) for d in divisors(N))
    g = (
        1
        + Fraction(mu, 12)
        - Fraction(eps2, 4)
        - Fraction(eps3, 3)
        - Fraction(eps_inf, 2)
    )
    if g.denominator != 1 or g < 0:
        raise ArithmeticError(f"genus formula gave {g} at level {N}")
    return LevelInvariants(N, mu, eps2, eps3, eps_inf, int(g))


def dim_cusp(k: int, N: int) -> int:
    """Dimension of the weight-k cusp space on Gamma_0(N); even k only."""
    if k % 2:
        raise ValueError("odd weights are not supported on Gamma_0(N)")
    if k <= 0:
        return 0
    inv = invariants_of(N)
    if k == 2:
        return inv.genus
    d = (
        (k - 1) * (inv.genus - 1)
        + (k // 4) * inv.eps2
        + (k // 3) * inv.eps3
        + (k // 2 - 1) * inv.eps_inf
    )
    if d < 0:
        raise ArithmeticError(f"dimension formula gave {d} for k={k}, N={N}")
    return d


def space_data(k: int, N: int) -> SpaceData:
    inv = invariants_of(N)
    return SpaceData(k, N, inv, dim_cusp(k, N))


def scan(nmax: int = 242, kmax: int = 50) -> list[SpaceData]:
    """All (k, N) with dim S_k(Gamma_0(N)) = 1, even 2 <= k <= kmax, N <= nmax.

    Rows ascend by (N, k)."""
    rows = []
    for N in range(1, nmax + 1):
        for k in range(2, kmax + 1, 2):
            data = space_data(k, N)
            if data.dim == 1:
                rows.append(data)
    return rows
