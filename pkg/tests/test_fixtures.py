"""Golden reference expansions replay exactly through the pipeline."""

import pytest

from cuspdual.fixtures import Fixture, golden_check_all, load_fixtures, rebuild
from cuspdual.spaces import CM_PAIRS


def test_fixture_inventory():
    fixtures = load_fixtures()
    assert len(fixtures) >= 30
    spaces = {fx.space for fx in fixtures}
    assert spaces == set(CM_PAIRS)
    # every space freezes its eigenform and its first base function
    f_spaces = set()
    for space in CM_PAIRS:
        tags = {fx.construction for fx in fixtures if fx.space == space}
        assert "g" in tags
        assert "phi2" in tags
        if any(t.startswith("F:") for t in tags):
            f_spaces.add(space)
    assert {(2, 27), (2, 32), (2, 49)} <= f_spaces


def test_fixture_records_are_well_formed():
    for fx in load_fixtures():
        assert isinstance(fx, Fixture)
        assert fx.label
        assert fx.provenance
        assert fx.series.precision > fx.series.order
        assert fx.series.is_integral()
        assert not fx.series.is_zero()


def test_loading_is_cached():
    assert load_fixtures() is load_fixtures()


def test_rebuild_single_fixture_at_lower_precision():
    fx = next(f for f in load_fixtures() if f.construction == "g")
    small = rebuild(fx, precision=5)
    for e in range(fx.series.order, 5):
        assert small.coeff(e) == fx.series.coeff(e)


def test_rebuild_rejects_unknown_construction():
    fx = load_fixtures()[0]
    broken = Fixture(fx.space, fx.label, "mystery", fx.provenance, fx.series)
    with pytest.raises(ValueError):
        rebuild(broken)


def test_golden_check_all_passes():
    ok, failures = golden_check_all()
    assert ok, failures
    assert failures == []
