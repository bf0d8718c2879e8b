"""Construction of the dual families phi_n and F_m and the A/C accessors."""

import pytest

from cuspdual.cmforms import g_expansion
from cuspdual.families import (
    A,
    C,
    base_forms,
    build_F,
    build_phi,
    valid_F_indices,
)
from cuspdual.spaces import CM_PAIRS
from helpers import rng

WEIGHT2 = tuple(s for s in CM_PAIRS if s[0] == 2)


def test_base_forms_shapes():
    for space in CM_PAIRS:
        b = base_forms(space, 25)
        assert b.phi2.order == -2 and b.phi2.coeff(-2) == 1
        assert b.phi2.is_integral()
        assert b.F_minus1.order == 1 and b.F_minus1.coeff(1) == -1
        if space[0] == 2:
            assert b.phi3.order == -3 and b.phi3.coeff(-3) == 1
            assert b.phi3.is_integral()
            assert b.phi2.coeff(0) == 0
            assert b.phi3.coeff(0) == 0
            assert b.L is None
        else:
            assert b.L.order == -1 and b.L.coeff(-1) == 1
            assert b.L.is_integral()
            assert b.phi3 is None


def test_base_forms_f_minus1_is_negated_eigenform():
    for space in CM_PAIRS:
        b = base_forms(space, 30)
        g = g_expansion(space, 30)
        for n in range(1, 30):
            assert b.F_minus1.coeff(n) == -g.coeff(n)


def test_phi_principal_part_is_clean():
    for space in CM_PAIRS:
        for n in range(2, 12):
            f = build_phi(space, n, 15).series
            assert f.coeff(-n) == 1
            for j in range(2, n):
                assert f.coeff(-j) == 0, (space, n, j)
            if space[0] == 2:
                assert f.coeff(0) == 0
            assert f.is_integral()


def test_phi_rejects_small_index():
    for bad in (1, 0, -3):
        with pytest.raises(ValueError):
            build_phi((2, 27), bad, 10)


def test_F_shape_and_indices():
    for space in CM_PAIRS:
        k = space[0]
        ms = [-1, 1, 2, 3] if k == 2 else [-1, 0, 1, 2, 3]
        for m in ms:
            f = build_F(space, m, 12).series
            assert f.coeff(-m) == -1
            for e in range(-m + 1, 2):
                assert f.coeff(e) == 0, (space, m, e)
            assert f.is_integral()


def test_valid_F_indices_and_rejections():
    for space in WEIGHT2:
        assert valid_F_indices(space, -1)
        assert not valid_F_indices(space, 0)
        assert valid_F_indices(space, 1)
        assert not valid_F_indices(space, -2)
        with pytest.raises(ValueError):
            build_F(space, 0, 10)
    assert valid_F_indices((4, 9), 0)
    assert not valid_F_indices((4, 9), -2)
    with pytest.raises(ValueError):
        build_F((4, 9), -2, 10)


def test_unknown_space_rejected():
    with pytest.raises(ValueError):
        base_forms((2, 11), 10)
    with pytest.raises(ValueError):
        build_phi((6, 1), 4, 10)


def test_witness_traces_construction():
    w = build_phi((2, 27), 4, 10).witness
    assert w.startswith("phi_2^2")
    assert build_phi((2, 27), 2, 10).witness == "phi_2"
    assert build_phi((2, 27), 5, 10).witness.startswith("phi_2*phi_3")
    assert build_phi((4, 9), 5, 10).witness.startswith("phi_2*L^3")
    assert build_F((2, 32), -1, 10).witness == "-g"
    assert build_F((2, 32), 2, 10).witness.startswith("F_-1*phi_3")
    assert build_F((4, 9), 0, 10).witness.startswith("F_-1*L")


def test_duality_on_grid():
    # C_m(n) = A_n(m) for every valid pair, including the m = -1 edge
    for space in CM_PAIRS:
        ms = [m for m in range(-1, 9) if valid_F_indices(space, m)]
        for n in range(2, 12):
            for m in ms:
                assert A(space, n, m) == C(space, m, n), (space, n, m)


def test_accessors_at_minus_one_give_eigenform_coefficients():
    for space in CM_PAIRS:
        g = g_expansion(space, 60)
        for n in range(2, 60):
            an = int(g.coeff(n))
            assert A(space, n, -1) == an
            assert C(space, -1, n) == an


def test_rebuild_at_higher_precision_is_consistent():
    r = rng(4001)
    for space in ((2, 27), (4, 9)):
        small = build_phi(space, 6, 8).series
        large = build_phi(space, 6, 300).series
        assert large.precision >= 300
        for e in range(small.order, small.precision):
            assert small.coeff(e) == large.coeff(e)
        fs = build_F(space, 3, 8).series
        fl = build_F(space, 3, 250).series
        for e in range(fs.order, fs.precision):
            assert fs.coeff(e) == fl.coeff(e)
        # random spot checks across an independent rebuild of another index
        for _ in range(10):
            n = r.randint(2, 9)
            a = build_phi(space, n, 40).series
            bseries = build_phi(space, n, 40).series
            assert a == bseries


def test_cached_object_reuse():
    f1 = build_phi((2, 36), 5, 20)
    f2 = build_phi((2, 36), 5, 10)
    assert f2 is f1  # lower request is served from the cache unchanged


def test_integer_accessors_reject_invalid_indices():
    with pytest.raises(ValueError):
        A((2, 27), 1, 3)
    with pytest.raises(ValueError):
        C((2, 27), 0, 5)
