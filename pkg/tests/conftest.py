import random
import shutil
from fractions import Fraction

import pytest

from isocurve.codes import SignedCrossingCode
from isocurve.polyscan import Polygon, is_generic

BOWTIE = Polygon([(0, 0), (3, -1), (1, 3), (4, 1)])
FIG8 = SignedCrossingCode((2, 1), (-1, 1))


def random_generic_polygon(rng: random.Random, m: int, spread: int = 20) -> Polygon:
    while True:
        P = Polygon([(Fraction(rng.randint(-spread, spread)), Fraction(rng.randint(-spread, spread))) for _ in range(m)])
        if is_generic(P):
            return P


def random_polygons_with_crossings(rng: random.Random, count: int, max_n: int = 6, m_range=(4, 8)):
    """Random generic polygons whose extracted curves have between 1 and max_n crossings."""
    from isocurve.polyscan import self_intersections

    out = []
    while len(out) < count:
        P = random_generic_polygon(rng, rng.randint(*m_range))
        k = len(self_intersections(P))
        if 1 <= k <= max_n:
            out.append(P)
    return out


def solver_available() -> bool:
    import os
    import shlex

    cmd = shlex.split(os.environ.get("SOLVER_CMD") or "z3")
    return bool(cmd) and shutil.which(cmd[0]) is not None


@pytest.fixture
def bowtie():
    return BOWTIE


@pytest.fixture
def fig8():
    return FIG8


@pytest.fixture
def rng():
    return random.Random(20240607)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
