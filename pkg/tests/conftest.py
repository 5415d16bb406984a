from __future__ import annotations

import sys
from importlib import resources
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vgh_judge.ontology import load_ontology_file  # noqa: E402
from vgh_judge.resolver import NominalizationMap  # noqa: E402
from vgh_judge.vgh import load_vgh_file  # noqa: E402

DATA = Path(str(resources.files("vgh_judge") / "data"))


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def vehicle():
    return load_ontology_file(DATA / "vehicle.ovf")


@pytest.fixture(scope="session")
def vertebrates():
    return load_ontology_file(DATA / "vertebrates.ovf")


@pytest.fixture()
def vertebrates_vgh():
    return load_vgh_file(DATA / "vertebrates.vgf")


@pytest.fixture()
def adjective_vgh():
    return load_vgh_file(DATA / "vertebrates_adjectives.vgf")


@pytest.fixture(scope="session")
def nominal():
    return NominalizationMap.from_file(DATA / "nominalizations.txt")


# -- acceptance summary ------------------------------------------------------

_CRITERIA: dict[str, list[tuple[str, bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        number, label = marker.args
        _CRITERIA.setdefault(str(number), []).append((label, rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA, key=int):
        checks = _CRITERIA[number]
        ok = all(passed for _, passed in checks)
        failed = [label for label, passed in checks if not passed]
        detail = f"{len(checks)} check(s)" + (f"; failed: {', '.join(failed)}" if failed else "")
        terminalreporter.write_line(f"AC{number}: {'PASS' if ok else 'FAIL'} ({detail})")
    terminalreporter.write_line(
        "AC8: EXCLUDED (full two-hierarchy trees and downstream utility are out of scope;"
        " AC4 and AC5 cover the arithmetic)"
    )
