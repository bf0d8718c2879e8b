"""The acceptance battery: thirteen exact-arithmetic criteria covering the
golden expansions, duality, the valuation theorem, the congruences, the
operator identities, the scanner, and the CM support structure.

Each criterion returns (ok, detail); run_all wraps them with timing and
enforces the runtime budgets that are part of criteria 1, 2, 4, and 5.
Everything is exact, so there are no tolerances anywhere: a criterion
passes only when every examined integer matches.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import cmforms, families, fixtures, verify
from .eta import EtaQuotient, expand
from .numthy import is_inert, is_prime
from .qseries import first_disagreement
from .spaces import CM_PAIRS, dim_cusp, invariants_of, scan

__all__ = ["CriterionResult", "run_all", "CRITERIA"]

# runtime budgets (seconds) that are part of the criterion statements
LIMITS = {1: 5.0, 2: 60.0, 4: 120.0, 5: 180.0}

THM1B_CASES = [
    ((2, 27), 5, (0, 1)),
    ((2, 32), 3, (0, 1)),
    ((2, 36), 5, (0,)),
    ((2, 49), 3, (0, 1)),
    ((4, 9), 5, (0,)),
]

TELESCOPING_CASES = [
    ((2, 27), 5, (0,)),
    ((2, 32), 3, (0, 1)),
    ((2, 49), 3, (0,)),
]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    ok: bool
    seconds: float
    detail: str


def _thm1_grid(space, bound=1500):
    grid = []
    for p in cmforms.inert_primes(space, bound):
        m = 0
        while p ** (2 * m + 1) <= bound:
            grid.append((p, m))
            m += 1
    return grid


def criterion_1():
    """Golden expansions reproduce every transcribed coefficient."""
    ok, failures = fixtures.golden_check_all()
    n = len(fixtures.load_fixtures())
    if ok:
        return True, f"{n} fixtures rebuilt and matched in full"
    return False, "; ".join(failures[:5])


def criterion_2():
    """Zagier duality C_m(n) = A_n(m) over m <= 40, n <= 40, all spaces."""
    bad = []
    total = 0
    for space in CM_PAIRS:
        r = verify.verify_duality(space, 40, 40)
        total += int(r.detail.split()[0])
        if not r.ok:
            bad.append(f"{space}: {r.detail}")
    if bad:
        return False, "; ".join(bad)
    return True, f"{total} index pairs agree across the five spaces"


def criterion_3():
    """A_n(-1) = a(n) for 2 <= n <= 200, every space."""
    bad = []
    inert_zeros = 0
    for space in CM_PAIRS:
        g = cmforms.g_expansion(space, 201)
        D = cmforms.discriminant(space)
        for n in range(2, 201):
            a = int(g.coeff(n))
            got = families.A(space, n, -1)
            if got != a:
                bad.append(f"{space} n={n}: A_n(-1)={got}, a(n)={a}")
                if len(bad) >= 5:
                    return False, "; ".join(bad)
            elif is_inert(D, n) and a == 0:
                inert_zeros += 1
    if bad:
        return False, "; ".join(bad)
    return True, (
        f"995 coefficients agree; {inert_zeros} inert-index values are 0"
    )


def criterion_4():
    """v_p(C(p^{2m+1})) = (k-1)m for every odd inert p with p^{2m+1} <= 1500."""
    bad = []
    count = 0
    for space in CM_PAIRS:
        families.build_F(space, 1, 1501)
        for p, m in _thm1_grid(space):
            count += 1
            r = verify.verify_thm1a(space, p, m)
            if not r.ok:
                bad.append(f"{space} p={p} m={m}: {r.detail}")
                if len(bad) >= 5:
                    return False, "; ".join(bad)
    if bad:
        return False, "; ".join(bad)
    return True, f"{count} (space, p, m) triples, all with exact equality"


def criterion_5():
    """Valuation lower bound for the normalized U-images, window 10."""
    bad = []
    count = 0
    for space, p, ms in THM1B_CASES:
        for m in ms:
            count += 1
            r = verify.verify_thm1b(space, p, m, window=10)
            if not r.ok:
                bad.append(f"{space} p={p} m={m}: {r.detail}")
    if bad:
        return False, "; ".join(bad)
    return True, f"{count} cases hold with window 10"


def criterion_6():
    """C(p^{2m+1}) = (-1)^m p^{(k-1)m} C(p) mod p^{(k-1)(m+1)}, criterion-4 grid."""
    bad = []
    count = 0
    for space in CM_PAIRS:
        for p, m in _thm1_grid(space):
            count += 1
            r = verify.verify_cong1(space, p, m)
            if not r.ok:
                bad.append(f"{space} p={p} m={m}: {r.detail}")
                if len(bad) >= 5:
                    return False, "; ".join(bad)
    if bad:
        return False, "; ".join(bad)
    return True, f"{count} congruences hold exactly"


def criterion_7():
    """p never divides C(p) for odd inert p <= 300; C(2) odd at (2,27)."""
    bad = []
    for space in CM_PAIRS:
        r = verify.verify_cong2(space, 300)
        if not r.ok:
            bad.append(f"{space}: {r.detail}")
    r2 = verify.verify_cong2((2, 27), 2, allow_p2=True)
    two = dict(r2.witnesses).get(2)
    if two is None or two % 2 == 0:
        bad.append(f"(2,27) p=2: C(2) mod 2 = {two}")
    if bad:
        return False, "; ".join(bad)
    return True, "all inert p <= 300 coprime to C(p); C(2) = 1 at (2,27)"


def criterion_8():
    """F|T_k(p) = theta^{k-1}(phi_p) for every inert p <= 50 coprime to N."""
    bad = []
    count = 0
    for space in CM_PAIRS:
        ps = cmforms.inert_primes(space, 50, include_two=True)
        for p in ps:
            count += 1
            r = verify.verify_hecke_theta(space, p)
            if not r.ok:
                bad.append(f"{space} p={p}: {r.detail}")
    if bad:
        return False, "; ".join(bad)
    return True, f"{count} (space, p) identities agree coefficient-wise"


def criterion_9():
    """F|T_k(p^n) = p^{(k-1)n} F_{p^n} + C(p^n) g for the two smallest
    primes coprime to N, n in {1, 2}."""
    bad = []
    count = 0
    for space in CM_PAIRS:
        N = space[1]
        ps = []
        p = 2
        while len(ps) < 2:
            if N % p != 0 and is_prime(p):
                ps.append(p)
            p += 1
        for p in ps:
            for n in (1, 2):
                count += 1
                r = verify.verify_prop1c(space, p, n)
                if not r.ok:
                    bad.append(f"{space} p={p} n={n}: {r.detail}")
    if bad:
        return False, "; ".join(bad)
    return True, f"{count} identities agree coefficient-wise"


def criterion_10():
    """Telescoping identity on the listed cases; C(p^{2m}) = 0 for inert p
    with p^{2m} <= 1500."""
    bad = []
    count = 0
    for space, p, ms in TELESCOPING_CASES:
        for m in ms:
            count += 1
            r = verify.verify_telescoping(space, p, m, window=10)
            if not r.ok:
                bad.append(f"{space} p={p} m={m}: {r.detail}")
    zeros = 0
    for space in CM_PAIRS:
        for p in cmforms.inert_primes(space, 38, include_two=True):
            mmax = 0
            while p ** (2 * (mmax + 1)) <= 1500:
                mmax += 1
            if mmax == 0:
                continue
            r = verify.verify_even_power_zero(space, p, mmax)
            zeros += mmax
            if not r.ok:
                bad.append(f"{space} p={p}: {r.detail}")
    if bad:
        return False, "; ".join(bad)
    return True, f"{count} telescoping cases; {zeros} even-power coefficients vanish"


def criterion_11():
    """The scanner finds the five spaces; genus and dim formulas agree to 500."""
    rows = scan(242, 50)
    found = {(row.k, row.N) for row in rows}
    missing = [s for s in CM_PAIRS if s not in found]
    if missing:
        return False, f"scan(242, 50) misses {missing}"
    for N in range(1, 501):
        inv = invariants_of(N)  # raises if the genus formula broke
        if dim_cusp(2, N) != inv.genus:
            return False, f"dim S_2(Gamma_0({N})) != genus"
    return True, (
        f"scan found all five pairs among {len(rows)} rows; "
        "genus checks pass to N = 500"
    )


def criterion_12():
    """Pipeline F at (2,32) equals the closed eta-product form to 2000."""
    space = (2, 32)
    P = 2000
    F = families.build_F(space, 1, P).series
    quotient = expand(
        EtaQuotient(((16, 6), (8, -2), (32, -4))), P + 2
    )
    g = cmforms.g_expansion(space, P + 3)
    oracle = -(g * quotient)
    spot = first_disagreement(F.truncated(P), oracle.truncated(P))
    if spot is not None:
        return False, f"first disagreement at q^{spot}"
    return True, f"2001 coefficients agree on [-1, {P})"


def criterion_13():
    """CM vanishing to n = 500 for all five g; the level-49 point counts
    reproduce the stored reference expansion."""
    bad = []
    for space in CM_PAIRS:
        violations = cmforms.cm_support_check(space, 500)
        if violations:
            bad.append(f"{space}: nonzero at inert n = {violations[:5]}")
    g49 = cmforms.g_expansion((2, 49), 10)
    for fx in fixtures.load_fixtures():
        if fx.space == (2, 49) and fx.label == "g":
            for e in range(fx.series.order, fx.series.precision):
                if g49.coeff(e) != fx.series.coeff(e):
                    bad.append(f"(2,49) g: q^{e} is {g49.coeff(e)}")
    if bad:
        return False, "; ".join(bad)
    return True, "no inert-index violations to 500; point counts match"


CRITERIA = [
    (1, "golden expansions", criterion_1),
    (2, "Zagier duality grid", criterion_2),
    (3, "A_n(-1) = a(n)", criterion_3),
    (4, "valuation equality", criterion_4),
    (5, "U-image valuation bound", criterion_5),
    (6, "odd-power congruence", criterion_6),
    (7, "C(p) coprime to p", criterion_7),
    (8, "Hecke-theta identity", criterion_8),
    (9, "prime-power Hecke identity", criterion_9),
    (10, "telescoping and even powers", criterion_10),
    (11, "scanner and dimension formulas", criterion_11),
    (12, "cross-oracle at (2,32)", criterion_12),
    (13, "CM support", criterion_13),
]


def run_all() -> list[CriterionResult]:
    results = []
    for number, name, fn in CRITERIA:
        t0 = time.perf_counter()
        ok, detail = fn()
        dt = time.perf_counter() - t0
        limit = LIMITS.get(number)
        if limit is not None:
            if dt >= limit:
                ok = False
                detail += f"; runtime {dt:.1f}s exceeded the {limit:.0f}s budget"
            else:
                detail += f"; runtime {dt:.1f}s within {limit:.0f}s"
        results.append(CriterionResult(number, name, ok, dt, detail))
    return results
