"""Finite-precision verification of the valuation, congruence, and duality
claims attached to the five spaces.

Each check returns a VerificationReport rather than raising: "verified"
means every examined coefficient satisfied the claim, "violated" carries
witnesses, and "insufficient_precision" means the requested evidence window
exceeded the precision cap. Coefficients are exact, so a verified report
can never flip to violated at higher precision; only insufficient_precision
can resolve further.

Throughout, F denotes the index-1 family member F_1 and C(n) its q^n
coefficient; g is the cusp form of the space. Valuation claims about series
are checked on an explicit window [order, W) and the report records W.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import cmforms, families
from .numthy import is_inert, vp
from .operators import U, V, hecke_general, theta_pow
from .qseries import QSeries, first_disagreement

__all__ = [
    "VerificationReport",
    "verify_thm1a",
    "verify_thm1b",
    "verify_cong1",
    "verify_cong2",
    "verify_hecke_theta",
    "verify_prop1c",
    "verify_even_power_zero",
    "verify_telescoping",
    "verify_duality",
    "verify_constant_term",
]

VERIFIED = "verified"
VIOLATED = "violated"
INSUFFICIENT = "insufficient_precision"


@dataclass(frozen=True)
class VerificationReport:
    claim: str
    space: tuple[int, int]
    params: dict
    status: str
    witnesses: tuple = ()
    precision_used: int = 0
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "space": list(self.space),
            "params": {k: _jsonable(v) for k, v in self.params.items()},
            "status": self.status,
            "witnesses": [[_jsonable(x) for x in w] for w in self.witnesses],
            "precision_used": self.precision_used,
            "detail": self.detail,
        }


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    return v


def _insufficient(claim, space, params, needed, cap) -> VerificationReport:
    params = dict(params, needed_precision=needed, max_precision=cap)
    return VerificationReport(
        claim, space, params, INSUFFICIENT,
        witnesses=((needed, cap),), precision_used=cap,
        detail=f"claim needs precision {needed}, capped at {cap}",
    )


def _check_prime(space, p, *, inert=True, odd=True, allow_p2=False) -> None:
    k, N = space
    if p < 2:
        raise ValueError("p must be a prime >= 2")
    if N % p == 0:
        raise ValueError(f"p = {p} divides the level {N}")
    if inert and not is_inert(cmforms.discriminant(space), p):
        raise ValueError(f"p = {p} is not inert for space {space}")
    if odd and p == 2 and not (allow_p2 and space == (2, 27)):
        raise ValueError(
            "p = 2 requires allow_p2 and the space (2,27)"
        )


def _C(space, n: int) -> int:
    return families.C(space, 1, n)


# -- valuation claims --------------------------------------------------------

def verify_thm1a(space, p, m, allow_p2=False, max_precision=None):
    """v_p(C(p^{2m+1})) equals (k-1)m exactly."""
    _check_prime(space, p, allow_p2=allow_p2)
    k = space[0]
    M = p ** (2 * m + 1)
    need = M + 1
    params = {"p": p, "m": m}
    if max_precision is not None and need > max_precision:
        return _insufficient("thm1a", space, params, need, max_precision)
    c = _C(space, M)
    if c == 0:
        return VerificationReport(
            "thm1a", space, params, VIOLATED,
            witnesses=((M, 0),), precision_used=need,
            detail=f"C({M}) = 0 has infinite valuation",
        )
    v = vp(c, p)
    expect = (k - 1) * m
    status = VERIFIED if v == expect else VIOLATED
    return VerificationReport(
        "thm1a", space, params, status,
        witnesses=((M, v),), precision_used=need,
        detail=f"v_{p}(C({M})) = {v}, expected {expect}",
    )


def verify_thm1b(space, p, m, window=10, allow_p2=False, max_precision=None):
    """min p-adic valuation of F|U(p^{2m+1})/C(p^{2m+1}) - g over the window
    is at least (k-1)(m+1)."""
    _check_prime(space, p, allow_p2=allow_p2)
    k = space[0]
    M = p ** (2 * m + 1)
    needF = M * window
    params = {"p": p, "m": m, "window": window}
    if max_precision is not None and needF > max_precision:
        return _insufficient("thm1b", space, params, needF, max_precision)
    F = families.build_F(space, 1, needF).series
    c = F.coeff(M)
    if c == 0:
        return VerificationReport(
            "thm1b", space, params, VIOLATED,
            witnesses=((M, 0),), precision_used=needF,
            detail=f"C({M}) = 0; the normalized U-image is undefined",
        )
    g = cmforms.g_expansion(space, window).truncated(window)
    G = U(F, M).scale(Fraction(1, c)) - g
    bound = (k - 1) * (m + 1)
    hi = min(G.precision, window)
    val, wit = G.min_valuation(p, G.order, hi)
    if val is None:
        return VerificationReport(
            "thm1b", space, params, VERIFIED,
            witnesses=(), precision_used=hi,
            detail=f"difference vanishes identically below O(q^{hi})",
        )
    status = VERIFIED if val >= bound else VIOLATED
    return VerificationReport(
        "thm1b", space, params, status,
        witnesses=((wit, val),), precision_used=hi,
        detail=f"min valuation {val} at q^{wit}, bound {bound}, window {hi}",
    )


# -- Congruences ------------------------------------------------------------

def verify_cong1(space, p, m, max_precision=None):
    """C(p^{2m+1}) = (-1)^m p^{(k-1)m} C(p) modulo p^{(k-1)(m+1)}."""
    _check_prime(space, p, odd=False)
    k = space[0]
    M = p ** (2 * m + 1)
    need = M + 1
    params = {"p": p, "m": m}
    if max_precision is not None and need > max_precision:
        return _insufficient("cong1", space, params, need, max_precision)
    lhs = _C(space, M)
    rhs = (-1) ** m * p ** ((k - 1) * m) * _C(space, p)
    mod = p ** ((k - 1) * (m + 1))
    ok = (lhs - rhs) % mod == 0
    return VerificationReport(
        "cong1", space, params, VERIFIED if ok else VIOLATED,
        witnesses=((M, (lhs - rhs) % mod),), precision_used=need,
        detail=f"C({M}) - ({rhs}) = {lhs - rhs} mod {mod}",
    )


def verify_cong2(space, pmax, allow_p2=False, max_precision=None):
    """p does not divide C(p) for any inert prime p <= pmax coprime to N
    (odd p by default; p = 2 joins at (2,27) under allow_p2)."""
    need = pmax + 1
    params = {"pmax": pmax, "allow_p2": allow_p2}
    if max_precision is not None and need > max_precision:
        return _insufficient("cong2", space, params, need, max_precision)
    include_two = allow_p2 and space == (2, 27)
    ps = cmforms.inert_primes(space, pmax, include_two=include_two)
    witnesses = []
    bad = []
    for p in ps:
        r = _C(space, p) % p
        witnesses.append((p, r))
        if r == 0:
            bad.append(p)
    status = VERIFIED if not bad else VIOLATED
    return VerificationReport(
        "cong2", space, params, status,
        witnesses=tuple(witnesses), precision_used=need,
        detail=(
            f"checked {len(ps)} inert primes"
            + (f"; divisible at {bad}" if bad else "")
        ),
    )


# -- Operator identities ----------------------------------------------------

def _compare(claim, space, params, lhs: QSeries, rhs: QSeries, precision_used):
    spot = first_disagreement(lhs, rhs)
    if spot is None:
        return VerificationReport(
            claim, space, params, VERIFIED,
            witnesses=(), precision_used=precision_used,
            detail=f"agreement below O(q^{min(lhs.precision, rhs.precision)})",
        )
    e = spot
    return VerificationReport(
        claim, space, params, VIOLATED,
        witnesses=((e, lhs.coeff(e) - rhs.coeff(e)),),
        precision_used=precision_used,
        detail=f"sides differ first at q^{e}",
    )


def verify_hecke_theta(space, p, window=12, max_precision=None):
    """F|T_k(p) agrees with the (k-1)-fold theta derivative of phi_p."""
    _check_prime(space, p, odd=False)
    k = space[0]
    needF = p * (window + 1)
    params = {"p": p, "window": window}
    if max_precision is not None and needF > max_precision:
        return _insufficient("hecke_theta", space, params, needF, max_precision)
    F = families.build_F(space, 1, needF).series
    lhs = hecke_general(F, k, p)
    phi = families.build_phi(space, p, window + 1).series
    rhs = theta_pow(phi, k - 1)
    shared = min(lhs.precision, rhs.precision)
    return _compare("hecke_theta", space, params, lhs, rhs, shared)


def verify_prop1c(space, p, n, window=10, max_precision=None):
    """F|T_k(p^n) = p^{(k-1)n} F_{p^n} + C(p^n) g, inertness not required."""
    _check_prime(space, p, inert=False, odd=False)
    if n < 0:
        raise ValueError("n must be >= 0")
    k = space[0]
    Pn = p ** n
    needF = Pn * window
    params = {"p": p, "n": n, "window": window}
    if max_precision is not None and needF > max_precision:
        return _insufficient("prop1c", space, params, needF, max_precision)
    F = families.build_F(space, 1, needF).series
    lhs = hecke_general(F, k, Pn)
    c = int(F.coeff(Pn)) if Pn < F.precision else _C(space, Pn)
    g = cmforms.g_expansion(space, window).truncated(window)
    rhs = (
        families.build_F(space, Pn, window).series.truncated(window)
        .scale(p ** ((k - 1) * n))
        + g.scale(c)
    )
    shared = min(lhs.precision, rhs.precision)
    return _compare("prop1c", space, params, lhs, rhs, shared)


def verify_even_power_zero(space, p, mmax, max_precision=None):
    """C(p^{2m}) = 0 for 1 <= m <= mmax when p is inert."""
    _check_prime(space, p, odd=False)
    need = p ** (2 * mmax) + 1
    params = {"p": p, "mmax": mmax}
    if max_precision is not None and need > max_precision:
        return _insufficient("even_power_zero", space, params, need, max_precision)
    witnesses = []
    bad = False
    for m in range(1, mmax + 1):
        c = _C(space, p ** (2 * m))
        witnesses.append((p ** (2 * m), c))
        if c != 0:
            bad = True
    return VerificationReport(
        "even_power_zero", space, params,
        VIOLATED if bad else VERIFIED,
        witnesses=tuple(witnesses), precision_used=need,
        detail=f"C(p^2m) for m = 1..{mmax}",
    )


def verify_telescoping(space, p, m, window=10, max_precision=None):
    """F|U(p^{2m+1})/C(p^{2m+1}) - g equals
    (1/C(p^{2m+1})) p^{(k-1)(2m+1)} (F_{p^{2m+1}} - F_{p^{2m}}|V(p))."""
    _check_prime(space, p)
    k = space[0]
    M = p ** (2 * m + 1)
    needF = M * window
    params = {"p": p, "m": m, "window": window}
    if max_precision is not None and needF > max_precision:
        return _insufficient("telescoping", space, params, needF, max_precision)
    F = families.build_F(space, 1, needF).series
    c = int(F.coeff(M))
    if c == 0:
        return VerificationReport(
            "telescoping", space, params, VIOLATED,
            witnesses=((M, 0),), precision_used=needF,
            detail=f"C({M}) = 0; the normalized identity is undefined",
        )
    g = cmforms.g_expansion(space, window).truncated(window)
    lhs = U(F, M).scale(Fraction(1, c)) - g
    scalar = Fraction(p ** ((k - 1) * (2 * m + 1)), c)
    big = families.build_F(space, M, window).series.truncated(window)
    prev_prec = (window - 1) // p + 2
    prev = families.build_F(space, M // p, prev_prec).series.truncated(prev_prec)
    rhs = (big - V(prev, p).truncated(window)).scale(scalar)
    shared = min(lhs.precision, rhs.precision)
    return _compare("telescoping", space, params, lhs, rhs, shared)


# -- Duality and the constant-term pairing ----------------------------------

def verify_duality(space, max_m=40, max_n=40, max_precision=None):
    """C_m(n) = A_n(m) over the full grid of valid indices m <= max_m,
    2 <= n <= max_n, including m = -1 (and m = 0 in weight 4)."""
    params = {"max_m": max_m, "max_n": max_n}
    need = max(max_m, max_n) + 2
    if max_precision is not None and need > max_precision:
        return _insufficient("duality", space, params, need, max_precision)
    ms = [-1] + [m for m in range(0, max_m + 1) if families.valid_F_indices(space, m)]
    # warm both family chains once so the accessor grid below is pure reads
    for nn in range(2, max_n + 1):
        families.build_phi(space, nn, max_m + 2)
    for mm in ms:
        if mm >= 1 or space[0] == 4:
            families.build_F(space, mm, max_n + 2)
    mismatches = []
    checked = 0
    for mm in ms:
        for nn in range(2, max_n + 1):
            checked += 1
            c = families.C(space, mm, nn)
            a = families.A(space, nn, mm)
            if c != a:
                mismatches.append((mm, nn, c, a))
    status = VERIFIED if not mismatches else VIOLATED
    return VerificationReport(
        "duality", space, params, status,
        witnesses=tuple(mismatches[:20]), precision_used=need,
        detail=f"{checked} index pairs, {len(mismatches)} mismatches",
    )


def verify_constant_term(space, samples, max_precision=None):
    """The product F_m phi_n has vanishing constant term (weight 2 only)."""
    if space[0] != 2:
        raise ValueError("the constant-term pairing applies to weight 2 spaces")
    params = {"samples": [list(s) for s in samples]}
    needed = max((max(m, n) + 2 for m, n in samples), default=2)
    if max_precision is not None and needed > max_precision:
        return _insufficient("constant_term", space, params, needed, max_precision)
    witnesses = []
    bad = False
    for m, n in samples:
        f = families.build_F(space, m, n + 2).series
        ph = families.build_phi(space, n, m + 2).series
        c0 = (f * ph).coeff(0)
        witnesses.append(((m, n), c0))
        if c0 != 0:
            bad = True
    return VerificationReport(
        "constant_term", space, params,
        VIOLATED if bad else VERIFIED,
        witnesses=tuple(witnesses), precision_used=needed,
        detail=f"{len(samples)} products",
    )
