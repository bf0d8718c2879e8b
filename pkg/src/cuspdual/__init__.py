"""Exact q-expansion workbench for five one-dimensional spaces of CM cusp
forms and the weakly holomorphic families dual to them.

The package constructs each space's cusp form g from eta quotients or
elliptic curve point counts, builds the dual families phi_n and F_m by
exact principal-part elimination, and verifies the coefficient duality,
valuation, and congruence claims at any requested precision. All
arithmetic is over the rationals; nothing is floating point.
"""

from .cmforms import cm_form, discriminant, g_expansion, inert_primes
from .eta import EtaQuotient, expand as expand_eta, parse_eta_quotient
from .families import (
    A,
    C,
    BaseForms,
    ConstructionError,
    FamilyForm,
    base_forms,
    build_F,
    build_phi,
)
from .numthy import is_inert, kronecker, vp
from .operators import U, V, hecke_general, hecke_prime_power, theta_pow
from .qseries import PrecisionError, QSeries
from .spaces import CM_PAIRS, dim_cusp, invariants_of, scan, space_data
from .verify import (
    VerificationReport,
    verify_cong1,
    verify_cong2,
    verify_constant_term,
    verify_duality,
    verify_even_power_zero,
    verify_hecke_theta,
    verify_prop1c,
    verify_telescoping,
    verify_thm1a,
    verify_thm1b,
)

__version__ = "0.1.0"

__all__ = [
    "A",
    "C",
    "BaseForms",
    "CM_PAIRS",
    "ConstructionError",
    "EtaQuotient",
    "FamilyForm",
    "PrecisionError",
    "QSeries",
    "U",
    "V",
    "VerificationReport",
    "base_forms",
    "build_F",
    "build_phi",
    "cm_form",
    "dim_cusp",
    "discriminant",
    "expand_eta",
    "g_expansion",
    "hecke_general",
    "hecke_prime_power",
    "inert_primes",
    "invariants_of",
    "is_inert",
    "kronecker",
    "parse_eta_quotient",
    "scan",
    "space_data",
    "theta_pow",
    "verify_cong1",
    "verify_cong2",
    "verify_constant_term",
    "verify_duality",
    "verify_even_power_zero",
    "verify_hecke_theta",
    "verify_prop1c",
    "verify_telescoping",
    "verify_thm1a",
    "verify_thm1b",
    "vp",
    "__version__",
]
