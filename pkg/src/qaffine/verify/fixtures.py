"""Shipped identity fixtures and their declared checks.

Each fixture is one JSON file in the data directory (override with the
``QAFFINE_FIXTURES`` environment variable).  A fixture carries either a
stored identity or a ``family`` entry that names a generator, plus a
``check`` block saying what the identity is compared against.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from ..affine import PolyGenerator, homogeneous_grading
from ..engine.families import chain_identity
from ..engine.identity import AlternatingSumIdentity
from ..parsing import parse_ideal
from .checks import (
    verify_against_closed_form,
    verify_against_oracle,
    verify_delta,
    verify_identities_agree,
    verify_partial_affinization,
)
from .report import VerificationReport

FIXTURE_ENV = "QAFFINE_FIXTURES"
DATA_DIR = Path(__file__).with_name("data")

_FAMILIES = {"chain": chain_identity}


class UnknownFixtureError(KeyError):
    pass


@dataclass(frozen=True)
class FixtureIdentity:
    name: str
    description: str
    source: str
    provenance: str
    check: dict
    identity: AlternatingSumIdentity | None = None
    right_side: AlternatingSumIdentity | None = None
    oracle: dict | None = None
    latex: str | None = None
    labels: dict = field(default_factory=dict)
    family: dict | None = None

    @property
    def title(self) -> str:
        return f"{self.name} ({self.description})"


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_ENV)
    return Path(env) if env else DATA_DIR


def _load_file(path: Path) -> FixtureIdentity:
    data = json.loads(path.read_text(encoding="utf-8"))
    identity = None
    if "identity" in data:
        identity = AlternatingSumIdentity.from_json_dict(data["identity"])
    elif "family" in data:
        fam = data["family"]
        identity = _FAMILIES[fam["name"]](fam["n"])
    right = data.get("right_side")
    return FixtureIdentity(
        name=data["name"],
        description=data["description"],
        source=data.get("source", ""),
        provenance=data["provenance"],
        check=data["check"],
        identity=identity,
        right_side=AlternatingSumIdentity.from_json_dict(right) if right else None,
        oracle=data.get("oracle"),
        latex=data.get("latex"),
        labels=data.get("labels", {}),
        family=data.get("family"),
    )


def list_fixtures(directory: Path | None = None) -> list[FixtureIdentity]:
    d = Path(directory) if directory else fixture_dir()
    if not d.is_dir():
        return []
    return [_load_file(p) for p in sorted(d.glob("*.json"))]


def load_fixture(name: str, directory: Path | None = None) -> FixtureIdentity:
    d = Path(directory) if directory else fixture_dir()
    path = d / f"{name}.json"
    if not path.is_file():
        known = ", ".join(f.name for f in list_fixtures(d))
        raise UnknownFixtureError(f"unknown fixture {name!r}; known: {known}")
    return _load_file(path)


def family_identity(fixture: FixtureIdentity, n: int) -> AlternatingSumIdentity:
    """Instance of a family fixture at another size."""
    if not fixture.family:
        raise ValueError(f"fixture {fixture.name} is not a family")
    return _FAMILIES[fixture.family["name"]](n)


def oracle_generators(fixture: FixtureIdentity) -> tuple[list[PolyGenerator], tuple[int, ...] | None]:
    """Generators (and coarse grading if needed) for the oracle comparison."""
    if not fixture.oracle:
        raise ValueError(f"fixture {fixture.name} has no oracle ideal")
    spec = parse_ideal(fixture.oracle["ideal"], n=fixture.identity.n)
    gens = spec.poly_generators()
    grading = homogeneous_grading(gens)
    if grading == tuple(range(1, spec.n + 1)):
        grading = None
    return gens, grading


def verify_fixture(name: str, box=None, order: int | None = None,
                   directory: Path | None = None) -> VerificationReport:
    """Run the fixture's declared check at its declared box and order (or the overrides)."""
    fx = load_fixture(name, directory)
    chk = fx.check
    kind = chk["kind"]
    box = tuple(chk["box"]) if box is None else box
    order = chk["order"] if order is None else order
    if kind == "closed-form":
        report = verify_against_closed_form(fx.identity, chk["pairs"], box, order, subject=name)
    elif kind == "delta":
        report = verify_delta(fx.identity, box, order, subject=name)
    elif kind == "right-side":
        report = verify_identities_agree(fx.identity, fx.right_side, box, order, subject=name)
    elif kind == "partial-affinization":
        report = verify_partial_affinization(chk["modes"], box[0], order)
        report.subject = name
    else:
        raise ValueError(f"fixture {name} declares unknown check {kind!r}")
    return report
