from fractions import Fraction

import pytest
from hypothesis import settings

from linearr import catalog
from linearr.arrangement import Arrangement
from linearr.geometry import build_lattice, closure_of

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

GENERIC3 = ["y = 0", "x = 0", "x + y = 1"]
PENCIL3 = ["x = 0", "y = 0", "y = x"]
NEARPENCIL4 = PENCIL3 + ["x + y = 1"]
TRIANGLE6 = ["y = 0", "x = 0", "x + y = 1", "y = 2x", "y = -2x + 2", "y = x/2 + 1"]


def arr(lines, no_parallels=True):
    return Arrangement.from_lines(lines, no_parallels)


def lat_of(lines):
    return build_lattice(arr(lines))


def point_at(lat, x, y):
    x, y = Fraction(x), Fraction(y)
    return next(p for p in lat.points if p.coordinates == (x, y))


AFFINE_CATALOG = sorted(n for n, e in catalog.entries().items() if not e.projective)
PROJECTIVE_CATALOG = sorted(n for n, e in catalog.entries().items() if e.projective)


@pytest.fixture(params=AFFINE_CATALOG)
def affine_entry(request):
    return catalog.entry(request.param)


@pytest.fixture
def triangle6():
    return lat_of(TRIANGLE6)


@pytest.fixture
def pencil3():
    return lat_of(PENCIL3)


def closure(lines, no_parallels=True):
    return closure_of(arr(lines, no_parallels))


def pytest_terminal_summary(terminalreporter):
    import test_acceptance
    if not test_acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k, (ok, detail) in sorted(test_acceptance.RESULTS.items()):
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
