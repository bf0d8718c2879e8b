"""Dual families phi_n and F_m attached to each of the five CM spaces.

Every space carries two weight-0 base functions (phi_2 and phi_3, except
(4,9) which uses the weight -2 function phi_2 and the weight 0 function L)
and the seed F_{-1} := -g. The families are built by exact Gaussian
elimination on principal parts:

  phi_n: seed with phi_2^a phi_3^b where 2a + 3b = n and b in {0,1}
         (phi_2 L^{n-2} at (4,9)), then for j = n-1 down to 2 subtract the
         q^{-j} coefficient times phi_j, finally subtract the constant term
         when the weight is 2. The q^{-1} coefficient is never cleared; at
         (4,9) the q^{-1} and q^0 coefficients are retained as produced.

  F_m:   seed with F_{-1} phi_{m+1} (F_{-1} L^{m+1} at (4,9)), then for
         r = m-1 down through the valid indices (including -1, and 0 when
         the weight is 4) add the q^{-r} coefficient times F_r, which zeroes
         that coefficient (the r = -1 step zeroes the q^1 coefficient). For
         weight 2 the constant term must already vanish and is asserted,
         never adjusted.

The result shapes are phi_n = q^{-n} + c q^{-1} + O(1) with no constant
term in weight 2, and F_m = -q^{-m} + sum_{n>=2} C_m(n) q^n. All outputs
are integral and the builds are deterministic: rebuilding at higher
precision reproduces every previously known coefficient exactly.

Coefficient accessors: A(space, n, m) reads phi_n and C(space, m, n) reads
F_m. At the special index m = -1 both accessors return the cusp form
coefficient a(n), absorbing the sign of F_{-1} = -g, so Zagier duality
C_m(n) = A_n(m) holds verbatim for every valid index pair.

Builds are cached per (space, kind, index). A request beyond the cached
precision rebuilds the whole dependency chain from scratch (no coefficient
patching) at max(request, twice the cached precision).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from . import cmforms
from .operators import hecke_prime_power
from .qseries import QSeries
from .spaces import CM_PAIRS

__all__ = [
    "BaseForms",
    "FamilyForm",
    "ConstructionError",
    "base_forms",
    "build_phi",
    "build_F",
    "A",
    "C",
    "valid_F_indices",
    "reset_caches",
]


class ConstructionError(RuntimeError):
    """A family build violated one of its guaranteed structural properties."""


@dataclass(frozen=True)
class BaseForms:
    """The generating functions of a space, all to at least the requested
    precision: phi2, then phi3 (weight-2 spaces) or L (space (4,9)), and
    F_minus1 = -g."""

    space: tuple[int, int]
    phi2: QSeries
    phi3: QSeries | None
    L: QSeries | None
    F_minus1: QSeries


@dataclass(frozen=True)
class FamilyForm:
    """One member of a dual family, with the combination that produced it."""

    kind: str  # "phi" or "F"
    index: int
    space: tuple[int, int]
    series: QSeries
    witness: str


# eta constructions of the base functions: (factors, additive constant)
_ETA_BASES: dict[tuple[int, int], tuple] = {
    (2, 27): ((((9, 4), (3, -1), (27, -3)), 0), (((3, 3), (27, -3)), 3)),
    (2, 32): ((((16, 6), (8, -2), (32, -4)), 0), (((8, 4), (16, 2), (4, -2), (32, -4)), 0)),
    (2, 36): ((((12, 1), (18, 3), (6, -1), (36, -3)), 0), (((9, 3), (12, 1), (3, -1), (36, -3)), -1)),
    (2, 49): ((((1, 1), (49, -1)), 1), None),  # phi3 needs a Hecke step, below
    (4, 9): ((((3, 2), (9, -6)), 0), (((1, 3), (9, -3)), 3)),
}


def _expand_base(factors, const, precision: int) -> QSeries:
    from .eta import EtaQuotient, expand

    f = expand(EtaQuotient(factors), precision)
    if const:
        f = f + QSeries.constant(const, precision)
    return f


def valid_F_indices(space: tuple[int, int], m: int) -> bool:
    """True iff F_m exists in the space: m = -1 or m >= 1, plus m = 0 when
    the weight is 4."""
    if m == -1:
        return True
    if space[0] == 4:
        return m >= 0
    return m >= 1


class _SpaceBuilder:
    def __init__(self, space: tuple[int, int]):
        if space not in CM_PAIRS:
            raise ValueError(
                f"space {space} is not one of the five CM spaces {CM_PAIRS}"
            )
        self.space = space
        self.k, self.N = space
        self._lock = threading.RLock()
        self._bases: BaseForms | None = None
        self._bases_prec = 0
        self._phi: dict[int, FamilyForm] = {}
        self._F: dict[int, FamilyForm] = {}
        # delivered precision above the request, constant per space
        self._phi_slack = 9 if self.k == 4 else 10
        self._F_slack = 7

    # -- base forms ---------------------------------------------------------

    def bases(self, precision: int) -> BaseForms:
        cached = self._bases
        if cached is not None and self._bases_prec >= precision:
            return cached
        with self._lock:
            if self._bases is None or self._bases_prec < precision:
                target = max(precision, 2 * self._bases_prec, 16)
                self._bases = self._build_bases(target)
                self._bases_prec = target
            return self._bases

    def _build_bases(self, P: int) -> BaseForms:
        spec2, spec3 = _ETA_BASES[self.space]
        g = cmforms.g_expansion(self.space, P)
        f_minus1 = -g
        if self.space == (2, 49):
            phi2 = _expand_base(*spec2, 2 * P + 4)
            # phi3 = phi2|T_0(2) - (1/2) phi2^2 + phi2
            phi3 = (
                hecke_prime_power(phi2, 0, 2, 1)
                - (phi2 * phi2).scale(Fraction(1, 2))
                + phi2
            )
            L = None
        elif self.k == 4:
            phi2 = _expand_base(*spec2, P)
            L = _expand_base(*spec3, P)
            phi3 = None
        else:
            phi2 = _expand_base(*spec2, P)
            phi3 = _expand_base(*spec3, P)
            L = None
        for name, f, order in (
            ("phi2", phi2, -2),
            ("phi3", phi3, -3),
            ("L", L, -1),
            ("F_-1", f_minus1, 1),
        ):
            if f is None:
                continue
            if not f.is_integral():
                raise ConstructionError(f"{name} at {self.space} is not integral")
            if f.order != order or f.coeff(order) != (-1 if name == "F_-1" else 1):
                raise ConstructionError(
                    f"{name} at {self.space} has wrong leading term"
                )
            if self.k == 2 and name in ("phi2", "phi3") and f.coeff(0) != 0:
                raise ConstructionError(
                    f"{name} at {self.space} has a nonzero constant term"
                )
        return BaseForms(self.space, phi2, phi3, L, f_minus1)

    # -- phi family ---------------------------------------------------------

    def phi(self, n: int, precision: int) -> FamilyForm:
        if n < 2:
            raise ValueError("phi_n exists for n >= 2 only")
        precision = max(precision, 2)
        cached = self._phi.get(n)
        if cached is not None and cached.series.precision >= precision:
            return cached
        with self._lock:
            cached = self._phi.get(n)
            if cached is not None and cached.series.precision >= precision:
                return cached
            request = precision
            if cached is not None:
                request = max(precision, 2 * cached.series.precision)
            self._ensure_phi_chain(n, request)
            form = self._build_phi(n, request)
            self._phi[n] = form
            return form

    def _ensure_phi_chain(self, top: int, request: int) -> None:
        """Warm phi_2 .. phi_{top-1}, ascending, so the reduction of
        phi_top finds every dependency at the seed precision exactly."""
        need = request + self._phi_slack
        for j in range(2, top):
            c = self._phi.get(j)
            if c is None or c.series.precision < need:
                self._phi[j] = self._build_phi(j, request)

    def _phi_dep(self, j: int, precision: int) -> QSeries:
        c = self._phi.get(j)
        if c is None or c.series.precision < precision:
            # fallback for an unwarmed dependency; kept rare by the chain pass
            c = self._build_phi(j, precision)
            self._phi[j] = c
        return c.series

    def _build_phi(self, n: int, R: int) -> FamilyForm:
        Q = R + n + 8
        b = self.bases(Q)
        # cached bases may carry far more precision than this build needs;
        # cut them to Q before the seed products, not after
        if self.k == 4:
            if n == 2:
                return self._finish_phi(n, b.phi2, "phi_2", R)
            seed = b.phi2.truncated(Q) * b.L.truncated(Q) ** (n - 2)
            witness = "phi_2*L" if n == 3 else f"phi_2*L^{n - 2}"
        else:
            if n == 2:
                return self._finish_phi(n, b.phi2, "phi_2", R)
            if n == 3:
                return self._finish_phi(n, b.phi3, "phi_3", R)
            if n % 2 == 0:
                a, bb = n // 2, 0
            else:
                a, bb = (n - 3) // 2, 1
            seed = b.phi2.truncated(Q) ** a
            witness = "phi_2" if a == 1 else f"phi_2^{a}"
            if bb:
                seed = seed * b.phi3.truncated(Q)
                witness += "*phi_3"
        S = R + self._phi_slack
        if seed.precision < S:
            raise ConstructionError(
                f"phi_{n} seed at {self.space} has precision {seed.precision} < {S}"
            )
        seed = seed.truncated(S)
        parts = [witness]
        f = seed
        for j in range(n - 1, 1, -1):
            c = f.coeff(-j)
            if c:
                f = f - self._phi_dep(j, S).scale(c)
                parts.append(_term(-c, f"phi_{j}"))
        if self.k == 2:
            c0 = f.coeff(0)
            if c0:
                f = f - QSeries.constant(c0, f.precision)
                parts.append(_term(-c0, None))
        return self._finish_phi(n, f, "".join(parts), R)

    def _finish_phi(self, n: int, f: QSeries, witness: str, R: int) -> FamilyForm:
        if f.precision < R:
            raise ConstructionError(
                f"phi_{n} at {self.space} delivered O(q^{f.precision}) < O(q^{R})"
            )
        if f.coeff(-n) != 1:
            raise ConstructionError(f"phi_{n} at {self.space} is not monic")
        for j in range(2, n):
            if f.coeff(-j) != 0:
                raise ConstructionError(
                    f"phi_{n} at {self.space} kept a q^{-j} term"
                )
        if self.k == 2 and f.coeff(0) != 0:
            raise ConstructionError(f"phi_{n} at {self.space} has a constant term")
        if not f.is_integral():
            raise ConstructionError(f"phi_{n} at {self.space} is not integral")
        return FamilyForm("phi", n, self.space, f, witness)

    # -- F family -----------------------------------------------------------

    def F(self, m: int, precision: int) -> FamilyForm:
        if not valid_F_indices(self.space, m):
            if m == 0:
                raise ValueError("weight 2 admits no F_0; indices are -1 and m >= 1")
            raise ValueError(f"F_{m} does not exist (valid: -1 and m >= {1 if self.k == 2 else 0})")
        precision = max(precision, 2)
        cached = self._F.get(m)
        if cached is not None and cached.series.precision >= precision:
            return cached
        with self._lock:
            cached = self._F.get(m)
            if cached is not None and cached.series.precision >= precision:
                return cached
            request = precision
            if cached is not None:
                request = max(precision, 2 * cached.series.precision)
            if self.k == 2 and m >= 1:
                self._ensure_phi_chain(m + 2, request + 7)
            self._ensure_F_chain(m, request)
            form = self._build_F(m, request)
            self._F[m] = form
            return form

    def _ensure_F_chain(self, top: int, request: int) -> None:
        need = request + self._F_slack
        lo = 1 if self.k == 2 else 0
        for r in range(lo, top):
            c = self._F.get(r)
            if c is None or c.series.precision < need:
                self._F[r] = self._build_F(r, request)

    def _F_dep(self, r: int, precision: int) -> QSeries:
        c = self._F.get(r)
        if c is None or c.series.precision < precision:
            c = self._build_F(r, precision)
            self._F[r] = c
        return c.series

    def _build_F(self, m: int, R: int) -> FamilyForm:
        if m == -1:
            g = cmforms.g_expansion(self.space, R + self._F_slack)
            return self._finish_F(-1, -g, "-g", R)
        Q = R + m + 8
        S = R + self._F_slack
        f_minus1 = (-cmforms.g_expansion(self.space, Q)).truncated(Q)
        if self.k == 4:
            L = self.bases(Q).L.truncated(Q)
            seed = f_minus1 * L ** (m + 1)
            witness = "F_-1*L" if m == 0 else f"F_-1*L^{m + 1}"
        else:
            phi_part = self.phi(m + 1, R + 7).series.truncated(S - 1)
            seed = f_minus1 * phi_part
            witness = f"F_-1*phi_{m + 1}"
        if seed.precision < S:
            raise ConstructionError(
                f"F_{m} seed at {self.space} has precision {seed.precision} < {S}"
            )
        seed = seed.truncated(S)
        parts = [witness]
        f = seed
        if self.k == 4:
            rs = list(range(m - 1, -1, -1))
        else:
            rs = list(range(m - 1, 0, -1))
        rs.append(-1)
        for r in rs:
            c = f.coeff(-r)
            if c:
                if r == -1:
                    dep = f_minus1
                else:
                    dep = self._F_dep(r, S)
                f = f + dep.scale(c)
                parts.append(_term(c, "F_-1" if r == -1 else f"F_{r}"))
        if self.k == 2 and f.coeff(0) != 0:
            raise ConstructionError(
                f"constant term nonzero in F_{m} at {self.space}"
            )
        return self._finish_F(m, f, "".join(parts), R)

    def _finish_F(self, m: int, f: QSeries, witness: str, R: int) -> FamilyForm:
        if f.precision < R:
            raise ConstructionError(
                f"F_{m} at {self.space} delivered O(q^{f.precision}) < O(q^{R})"
            )
        if f.coeff(-m) != -1:
            raise ConstructionError(f"F_{m} at {self.space} has wrong leading term")
        for e in range(-m + 1, 2):
            if f.coeff(e) != 0:
                raise ConstructionError(
                    f"F_{m} at {self.space} kept a q^{e} term"
                )
        if not f.is_integral():
            raise ConstructionError(f"F_{m} at {self.space} is not integral")
        return FamilyForm("F", m, self.space, f, witness)


def _term(c: Fraction, name: str | None) -> str:
    """Render adding c*name (or the constant c) to a running expression."""
    sign = " - " if c < 0 else " + "
    mag = abs(c)
    if name is None:
        return f"{sign}{mag}"
    if mag == 1:
        return f"{sign}{name}"
    return f"{sign}{mag}*{name}"


_builders: dict[tuple[int, int], _SpaceBuilder] = {}
_builders_lock = threading.Lock()


def _builder(space: tuple[int, int]) -> _SpaceBuilder:
    space = tuple(space)
    b = _builders.get(space)
    if b is None:
        with _builders_lock:
            b = _builders.setdefault(space, _SpaceBuilder(space))
    return b


def base_forms(space: tuple[int, int], precision: int) -> BaseForms:
    """The base functions of the space, to at least the given precision."""
    return _builder(space).bases(precision)


def build_phi(space: tuple[int, int], n: int, precision: int) -> FamilyForm:
    """phi_n = q^{-n} + O(q^{-1}) with cleared intermediate principal part."""
    return _builder(space).phi(n, precision)


def build_F(space: tuple[int, int], m: int, precision: int) -> FamilyForm:
    """F_m = -q^{-m} + sum_{n>=2} C_m(n) q^n (and F_{-1} = -g)."""
    return _builder(space).F(m, precision)


def A(space: tuple[int, int], n: int, m: int) -> int:
    """Coefficient A_n(m) of q^m in phi_n.

    A(space, n, -1) returns a(n): the raw q^{-1} coefficient of phi_n is
    -a(n) by the constant-term pairing against F_{-1} = -g, and the package
    convention absorbs that sign at m = -1 on both accessors."""
    if m == -1:
        c = -_builder(space).phi(n, 1).series.coeff(-1)
    else:
        c = _builder(space).phi(n, m + 1).series.coeff(m)
    return _as_int(c)


def C(space: tuple[int, int], m: int, n: int) -> int:
    """Coefficient C_m(n) of q^n in F_m; C(space, -1, n) returns a(n)."""
    if m == -1:
        return _as_int(cmforms.g_expansion(space, n + 1).coeff(n))
    return _as_int(_builder(space).F(m, n + 1).series.coeff(n))


def _as_int(c: Fraction) -> int:
    if c.denominator != 1:
        raise ConstructionError(f"expected an integer coefficient, got {c}")
    return int(c)


def reset_caches() -> None:
    """Drop all cached builders (used by tests)."""
    with _builders_lock:
        _builders.clear()
