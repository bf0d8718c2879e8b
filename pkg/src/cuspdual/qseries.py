"""Sparse exact Laurent q-series with hard truncation precision.

A QSeries holds finitely many exact rational coefficients together with a
truncation precision P. The semantics are strict: every coefficient at an
exponent e < P is exactly known (absent means exactly zero), and reading a
coefficient at e >= P raises PrecisionError rather than returning a silent
zero. The order v is the smallest exponent carrying a nonzero coefficient,
or P - 1 for the zero series; the invariant v < P always holds, which keeps
precision propagation sound even for zero operands.

Precision propagation rules:

  add/sub       min(P_f, P_g)
  scale         P_f (scaling by zero gives the zero series at P_f)
  mul           min(P_f + v_g, P_g + v_f)
  pow(f, e)     repeated mul; pow(f, 0) is the constant 1 at precision P_f
  invert        order -v, precision P - 2v
  shifted(s)    exponents, order and precision all move by s

Instances are immutable and hashable; equality is structural (same
precision and the same coefficient table).
"""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .numthy import vp

__all__ = [
    "PrecisionError",
    "QSeries",
    "coefficients_agree",
    "first_disagreement",
]

Scalar = Union[int, Fraction]

_ZERO = Fraction(0)


class PrecisionError(ValueError):
    """A coefficient beyond the known truncation precision was requested."""


class QSeries:
    __slots__ = ("_coeffs", "_order", "_precision", "_integral")

    def __init__(
        self,
        entries: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = (),
        precision: int = 0,
    ):
        coeffs: dict[int, Fraction] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for e, c in items:
            e = operator.index(e)
            if e >= precision:
                raise PrecisionError(
                    f"exponent {e} is not below the precision O(q^{precision})"
                )
            if not isinstance(c, Fraction):
                c = Fraction(c)
            if e in coeffs:
                c = coeffs[e] + c
            if c:
                coeffs[e] = c
            else:
                coeffs.pop(e, None)
        self._init_raw(coeffs, precision)

    def _init_raw(self, coeffs: dict[int, Fraction], precision: int) -> None:
        self._coeffs = coeffs
        self._precision = precision
        self._order = min(coeffs) if coeffs else precision - 1
        self._integral = all(c.denominator == 1 for c in coeffs.values())

    @classmethod
    def _raw(cls, coeffs: dict[int, Fraction], precision: int) -> "QSeries":
        """Trusted constructor: values already nonzero Fractions below precision."""
        f = object.__new__(cls)
        f._init_raw(coeffs, precision)
        return f

    @classmethod
    def zero(cls, precision: int) -> "QSeries":
        return cls._raw({}, precision)

    @classmethod
    def one(cls, precision: int) -> "QSeries":
        return cls.constant(1, precision)

    @classmethod
    def constant(cls, c: Scalar, precision: int) -> "QSeries":
        if precision < 1:
            raise PrecisionError("a constant needs precision at least 1")
        c = c if isinstance(c, Fraction) else Fraction(c)
        return cls._raw({0: c} if c else {}, precision)

    @classmethod
    def monomial(cls, e: int, c: Scalar = 1, *, precision: int) -> "QSeries":
        return cls([(e, c)], precision)

    # -- inspection ---------------------------------------------------------

    @property
    def precision(self) -> int:
        return self._precision

    @property
    def order(self) -> int:
        return self._order

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self._coeffs))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Nonzero (exponent, coefficient) pairs, ascending in exponent."""
        for e in sorted(self._coeffs):
            yield e, self._coeffs[e]

    def coeff(self, e: int) -> Fraction:
        """Exact coefficient of q^e; raises beyond the precision."""
        if e >= self._precision:
            raise PrecisionError(
                f"coefficient of q^{e} is beyond the precision O(q^{self._precision})"
            )
        return self._coeffs.get(e, _ZERO)

    def __getitem__(self, e: int) -> Fraction:
        return self.coeff(e)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_integral(self) -> bool:
        """True iff every known coefficient has denominator 1."""
        return self._integral

    def min_valuation(
        self, p: int, lo: int, hi: int
    ) -> tuple[int | None, int | None]:
        """Minimum p-adic valuation over coefficients with lo <= e < hi.

        Returns (valuation, witness exponent), or (None, None) when every
        coefficient in the window vanishes (infinite valuation). The window
        must stay within the known precision; exponents below the order are
        exact zeros and are skipped.
        """
        if hi > self._precision:
            raise PrecisionError(
                f"window upper end {hi} exceeds the precision O(q^{self._precision})"
            )
        best: int | None = None
        witness: int | None = None
        for e, c in self._coeffs.items():
            if lo <= e < hi:
                v = vp(c, p)
                if best is None or v < best or (v == best and e < witness):
                    best, witness = v, e
        return best, witness

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        prec = min(self._precision, other._precision)
        coeffs = {e: c for e, c in self._coeffs.items() if e < prec}
        for e, c in other._coeffs.items():
            if e < prec:
                s = coeffs.get(e, _ZERO) + c
                if s:
                    coeffs[e] = s
                else:
                    coeffs.pop(e, None)
        return QSeries._raw(coeffs, prec)

    def __sub__(self, other: "QSeries") -> "QSeries":
        if not isinstance(other, QSeries):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "QSeries":
        return QSeries._raw({e: -c for e, c in self._coeffs.items()}, self._precision)

    def scale(self, c: Scalar) -> "QSeries":
        """Multiply by an exact scalar; precision is preserved."""
        if not isinstance(c, Fraction):
            c = Fraction(c)
        if not c:
            return QSeries._raw({}, self._precision)
        return QSeries._raw(
            {e: c * v for e, v in self._coeffs.items()}, self._precision
        )

    def __mul__(self, other: Union["QSeries", Scalar]) -> "QSeries":
        if isinstance(other, QSeries):
            return self._mul_series(other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: Scalar) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def _mul_series(self, other: "QSeries") -> "QSeries":
        prec = min(
            self._precision + other._order, other._precision + self._order
        )
        if not self._coeffs or not other._coeffs:
            return QSeries._raw({}, prec)
        # iterate the sparser factor outside; cut the inner loop at the precision
        f, g = self, other
        if len(f._coeffs) > len(g._coeffs):
            f, g = g, f
        gitems = sorted(g._coeffs.items())
        if f._integral and g._integral:
            acc: dict[int, int] = {}
            for e1, c1 in f._coeffs.items():
                n1 = c1.numerator
                limit = prec - e1
                for e2, c2 in gitems:
                    if e2 >= limit:
                        break
                    e = e1 + e2
                    acc[e] = acc.get(e, 0) + n1 * c2.numerator
            return QSeries._raw(
                {e: Fraction(v) for e, v in acc.items() if v}, prec
            )
        accf: dict[int, Fraction] = {}
        for e1, c1 in f._coeffs.items():
            limit = prec - e1
            for e2, c2 in gitems:
                if e2 >= limit:
                    break
                e = e1 + e2
                accf[e] = accf.get(e, _ZERO) + c1 * c2
        return QSeries._raw({e: v for e, v in accf.items() if v}, prec)

    def __pow__(self, e: int) -> "QSeries":
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            raise ValueError("negative powers: invert first, then raise")
        if e == 0:
            return QSeries.one(self._precision)
        result = None
        base = self
        while True:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if not e:
                return result
            base = base * base

    def invert(self) -> "QSeries":
        """Multiplicative inverse; order -v, precision P - 2v."""
        if not self._coeffs:
            raise ZeroDivisionError("the zero series has no inverse")
        v = self._order
        length = self._precision - v  # number of known unit coefficients, >= 1
        unit = sorted((e - v, c) for e, c in self._coeffs.items())
        inv0 = 1 / unit[0][1]
        tail = unit[1:]
        b: dict[int, Fraction] = {0: inv0}
        for n in range(1, length):
            s = _ZERO
            for off, c in tail:
                if off > n:
                    break
                bn = b.get(n - off)
                if bn is not None:
                    s += c * bn
            if s:
                b[n] = -inv0 * s
        prec = self._precision - 2 * v
        return QSeries._raw({n - v: c for n, c in b.items()}, prec)

    def shifted(self, s: int) -> "QSeries":
        """Multiply by q^s: exponents and precision both move by s."""
        return QSeries._raw(
            {e + s: c for e, c in self._coeffs.items()}, self._precision + s
        )

    def truncated(self, precision: int) -> "QSeries":
        """Forget coefficients at exponents >= precision (never extends)."""
        if precision > self._precision:
            raise PrecisionError(
                f"cannot extend precision O(q^{self._precision}) to O(q^{precision})"
            )
        return QSeries._raw(
            {e: c for e, c in self._coeffs.items() if e < precision}, precision
        )

    # -- serialization ------------------------------------------------------

    def to_json(self) -> dict:
        """JSON-ready dict: order, precision, ascending [exponent, "num/den"]."""
        return {
            "order": self._order,
            "precision": self._precision,
            "coeffs": [[e, str(c)] for e, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "QSeries":
        precision = operator.index(data["precision"])
        entries = [(operator.index(e), Fraction(c)) for e, c in data["coeffs"]]
        f = cls(entries, precision)
        declared = operator.index(data["order"])
        if f.order != declared:
            raise ValueError(
                f"declared order {declared} disagrees with coefficients ({f.order})"
            )
        return f

    # -- comparison and display --------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self._precision == other._precision and self._coeffs == other._coeffs
        )

    def __hash__(self) -> int:
        return hash((self._precision, tuple(sorted(self._coeffs.items()))))

    def __str__(self) -> str:
        parts = []
        for e, c in self.items():
            parts.append(_term(e, c, first=not parts))
        body = "".join(parts) if parts else "0"
        return f"{body} + O(q^{self._precision})"

    def __repr__(self) -> str:
        return f"QSeries({dict(self.items())!r}, precision={self._precision})"


def _term(e: int, c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    if e == 0:
        coeff = str(mag)
    elif mag == 1:
        coeff = "q" if e == 1 else f"q^{e}"
    else:
        coeff = f"{mag}*q" if e == 1 else f"{mag}*q^{e}"
    if first:
        return f"{sign}{coeff}"
    return f" {sign} {coeff}"


def coefficients_agree(f: QSeries, g: QSeries) -> bool:
    """True iff f and g match on every exponent below the shared precision."""
    return first_disagreement(f, g) is None


def first_disagreement(f: QSeries, g: QSeries) -> int | None:
    """Smallest exponent below min(P_f, P_g) where f and g differ, else None."""
    prec = min(f.precision, g.precision)
    keys = {e for e in f.support if e < prec} | {e for e in g.support if e < prec}
    for e in sorted(keys):
        if f.coeff(e) != g.coeff(e):
            return e
    return None
