import pathlib

import pytest

from thomforge import make_cdga

FIXTURE_DIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"

CORPUS = sorted(p.name for p in FIXTURE_DIR.glob("*.cdga"))

# zero-differential fixtures (formal by construction)
FORMAL = ["formal-squares.cdga", "h-cp2.cdga", "h-cp3.cdga", "h-cp3-hodge.cdga", "h-s2.cdga", "hodge-mixed.cdga"]

# weighted, simply connected fixtures eligible for minimal models
SIMPLY_CONNECTED_WEIGHTED = [
    "cp2.cdga",
    "cp3.cdga",
    "cp4.cdga",
    "h-cp2.cdga",
    "h-cp3.cdga",
    "h-s2.cdga",
    "s3.cdga",
    "formal-squares.cdga",
    "massey-fixture.cdga",
    "massey-thom-fixture.cdga",
    "k4-fixture.cdga",
]


def load(name):
    return make_cdga((FIXTURE_DIR / name).read_text())


@pytest.fixture
def fixtures_dir():
    return FIXTURE_DIR
