import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from divstrata import fixtures  # noqa: E402
from divstrata.divide import intersection_form  # noqa: E402
from divstrata.generators import generate_grid_divide, generate_line_arrangement_divide  # noqa: E402
from divstrata.strata import all_stratum_records, atomic_classes  # noqa: E402

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def all_divides():
    """Every fixture and generated divide used by the property suites."""
    out = {name: fixtures.load(name)[1] for name in fixtures.NAMES}
    for d in range(2, 7):
        out[f"lines{d}"] = generate_line_arrangement_divide(d)
    for p in range(2, 5):
        for q in range(2, 5):
            out[f"grid{p}x{q}"] = generate_grid_divide(p, q)
    return out


@pytest.fixture(scope="session")
def gl4():
    germ, d = fixtures.load("gl4")
    lat = intersection_form(d)
    cs = atomic_classes(lat, d)
    return {"germ": germ, "divide": d, "lat": lat, "cs": cs, "records": all_stratum_records(cs)}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
