"""Frozen reference expansions and the machinery to replay them.

golden.json stores hand-transcribed q-expansions for the five spaces: the
cusp forms g, the base functions, and low-index members of both dual
families. Each fixture records the construction the package should use to
reproduce it; `golden_check_all` rebuilds every fixture from scratch and
compares the full stored window coefficient by coefficient, zeros included.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..qseries import QSeries

__all__ = ["Fixture", "load_fixtures", "rebuild", "golden_check_all"]


@dataclass(frozen=True)
class Fixture:
    space: tuple[int, int]
    label: str
    construction: str
    provenance: str
    series: QSeries


_cache: tuple[Fixture, ...] | None = None


def load_fixtures() -> tuple[Fixture, ...]:
    global _cache
    if _cache is None:
        path = resources.files(__package__).joinpath("data/golden.json")
        doc = json.loads(path.read_text())
        if doc.get("schema") != 1:
            raise ValueError("unrecognized golden fixture schema")
        _cache = tuple(
            Fixture(
                space=tuple(entry["space"]),
                label=entry["label"],
                construction=entry["construction"],
                provenance=entry["provenance"],
                series=QSeries.from_json(entry["series"]),
            )
            for entry in doc["fixtures"]
        )
    return _cache


def rebuild(fixture: Fixture, precision: int | None = None) -> QSeries:
    """Recompute the fixture's expansion through the package pipeline."""
    from .. import cmforms, families

    P = fixture.series.precision if precision is None else precision
    tag = fixture.construction
    if tag == "g":
        return cmforms.g_expansion(fixture.space, P)
    if tag in ("phi2", "phi3", "L"):
        f = getattr(families.base_forms(fixture.space, P), tag)
        if f is None:
            raise ValueError(f"space {fixture.space} has no base form {tag}")
        return f
    kind, _, idx = tag.partition(":")
    if kind == "phi" and idx:
        return families.build_phi(fixture.space, int(idx), P).series
    if kind == "F" and idx:
        return families.build_F(fixture.space, int(idx), P).series
    raise ValueError(f"unrecognized fixture construction {tag!r}")


def golden_check_all() -> tuple[bool, list[str]]:
    """Rebuild every fixture and compare the entire stored window.

    Returns (ok, failures) where each failure pinpoints the first exponent
    at which the rebuilt expansion disagrees with the stored one.
    """
    failures: list[str] = []
    for fx in load_fixtures():
        built = rebuild(fx)
        for e in range(fx.series.order, fx.series.precision):
            want = fx.series.coeff(e)
            got = built.coeff(e)
            if got != want:
                failures.append(
                    f"{fx.space} {fx.label}: coefficient of q^{e} is {got}, "
                    f"stored {want}"
                )
                break
    return (not failures, failures)
