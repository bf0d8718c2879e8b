"""Dedekind eta quotients prod_d eta(d z)^{r_d} as exact q-expansions.

With q = e^{2 pi i z}, eta(z) = q^{1/24} prod_{n>=1} (1 - q^n), so a quotient
with factors (d, r_d) expands as q^{s/24} times a product of Euler factors
E(q^d)^{r_d}, where s = sum d r_d. Only quotients with 24 | s (integral
q-order) and even sum of exponents (integral weight) are expanded here.

The Euler product is generated through the pentagonal number theorem,
E(q) = sum_k (-1)^k q^{k(3k-1)/2}, which keeps every factor sparse: about
sqrt(8P/3) terms below precision P.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .qseries import QSeries

__all__ = [
    "EtaQuotient",
    "FractionalOrderError",
    "euler_product",
    "expand",
    "parse_eta_quotient",
    "format_eta_quotient",
]


class FractionalOrderError(ValueError):
    """The quotient's q-order s/24 is not an integer."""


@dataclass(frozen=True)
class EtaQuotient:
    """An eta quotient, stored as ascending (scale, exponent) factors."""

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for d, r in self.factors:
            if d < 1:
                raise ValueError(f"eta argument scale must be positive, got {d}")
            if r == 0:
                raise ValueError(f"eta({d}) carries exponent zero")
            if d in seen:
                raise ValueError(f"eta({d}) appears twice")
            seen.add(d)
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @property
    def weight(self) -> Fraction:
        """Modular weight (1/2) sum r_d."""
        return Fraction(sum(r for _, r in self.factors), 2)

    @property
    def sigma(self) -> int:
        return sum(d * r for d, r in self.factors)


def q_order(eq: EtaQuotient) -> int:
    """Order of the leading q-power, (1/24) sum d r_d; must be integral."""
    s = eq.sigma
    if s % 24:
        raise FractionalOrderError(
            f"q-order {s}/24 is fractional; only integral orders are expanded"
        )
    return s // 24


def euler_product(precision: int) -> QSeries:
    """E(q) = prod (1 - q^n) to the given precision, via pentagonal numbers."""
    return _euler_scaled(1, precision)


def _euler_scaled(delta: int, precision: int) -> QSeries:
    """E(q^delta) to the given precision (a unit series, order 0)."""
    if precision < 1:
        raise ValueError("precision must be at least 1 for a unit series")
    coeffs = {0: Fraction(1)}
    k = 1
    while True:
        lo = delta * (k * (3 * k - 1) // 2)
        hi = delta * (k * (3 * k + 1) // 2)
        if lo >= precision:
            break
        sign = Fraction(-1 if k % 2 else 1)
        coeffs[lo] = sign
        if hi < precision:
            coeffs[hi] = sign
        k += 1
    return QSeries(coeffs, precision)


def expand(eq: EtaQuotient, precision: int) -> QSeries:
    """Exact q-expansion of the quotient to O(q^precision).

    Requires precision > q_order(eq) so at least the leading term is known,
    and an even exponent sum (integral weight).
    """
    if eq.weight.denominator != 1:
        raise ValueError("half-integral weight quotients are not supported")
    order = q_order(eq)
    rel = precision - order
    if rel < 1:
        raise ValueError(
            f"precision {precision} does not exceed the q-order {order}"
        )
    acc = QSeries.one(rel)
    for d, r in eq.factors:
        base = _euler_scaled(d, rel)
        if r < 0:
            base = base.invert()
        acc = acc * base ** abs(r)
    return acc.shifted(order)


_TOKEN = re.compile(r"\s*eta\((\d+)\)(?:\^(-?\d+))?\s*")


def parse_eta_quotient(text: str) -> EtaQuotient:
    """Parse "eta(3)^2*eta(9)^-1"-style quotient syntax; exact, no guessing."""
    factors = []
    pos = 0
    expect_factor = True
    while pos < len(text):
        if not expect_factor:
            if text[pos] == "*":
                pos += 1
                expect_factor = True
                continue
            raise ValueError(f"unexpected token at {text[pos:]!r}")
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected token at {text[pos:]!r}")
        d = int(m.group(1))
        r = int(m.group(2)) if m.group(2) is not None else 1
        factors.append((d, r))
        pos = m.end()
        expect_factor = False
    if expect_factor:
        raise ValueError("empty eta quotient" if not factors else "trailing '*'")
    return EtaQuotient(tuple(factors))


def format_eta_quotient(eq: EtaQuotient) -> str:
    parts = []
    for d, r in eq.factors:
        parts.append(f"eta({d})" if r == 1 else f"eta({d})^{r}")
    return "*".join(parts)
