from pathlib import Path

import pytest

from cobool.model import parse_template

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = ROOT / "fixtures"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

FIXTURE_FILES = {
    "NOT": "fix_not.cbt",
    "1IN3": "fix_1in3.cbt",
    "AFFINE": "fix_affine.cbt",
    "HORN": "fix_horn.cbt",
    "NONORD": "fix_nonord.cbt",
    "COLLAPSE": "fix_collapse.cbt",
}
TRACTABLE_CORES = ("NOT", "AFFINE", "HORN")


def load_fixture(name):
    return parse_template((FIXTURE_DIR / FIXTURE_FILES[name]).read_text())


FIX = {name: load_fixture(name) for name in FIXTURE_FILES}


@pytest.fixture(params=sorted(FIXTURE_FILES))
def fixture_name(request):
    return request.param


def raw_tables(tmpl):
    return {f.name: f.table for f in tmpl.functions}


# -- acceptance reporting ------------------------------------------------------

ACCEPTANCE_CRITERIA = 9
_acceptance_key = pytest.StashKey[dict]()


@pytest.fixture
def acceptance(request):
    """``record(number, ok, detail)`` logs one acceptance criterion outcome."""
    results = request.config.stash.setdefault(_acceptance_key, {})

    def record(number, ok, detail):
        results[number] = (bool(ok), detail)
        print(f"acceptance {number}: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_acceptance_key, None)
    if results is None:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, ACCEPTANCE_CRITERIA + 1):
        ok, detail = results.get(n, (False, "not run to completion"))
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
