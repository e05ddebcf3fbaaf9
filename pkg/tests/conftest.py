"""Shared fixtures and dataset builders for the test suite."""

from __future__ import annotations

import numpy as np
import pytest

from gradmine import Dataset

# Four course participants: age, counselling sessions attended, final marks.
COURSE_NAMES = ("age", "sessions", "marks")
COURSE_ROWS = [
    [23.0, 2.0, 55.0],
    [32.0, 4.0, 64.0],
    [40.0, 5.0, 78.0],
    [25.0, 5.0, 48.0],
]


@pytest.fixture
def course_dataset() -> Dataset:
    return Dataset(COURSE_NAMES, np.array(COURSE_ROWS))


def random_dataset(rng: np.random.Generator, n: int, m: int, ties: bool = False) -> Dataset:
    """A random n x m dataset; with ties=True values are drawn from a
    small integer grid so equal cells are common."""
    if ties:
        values = rng.integers(0, 4, size=(n, m)).astype(float)
    else:
        values = rng.random((n, m))
    return Dataset(tuple(f"col{i}" for i in range(m)), values)


def write_csv(path, names, rows, delimiter=",") -> None:
    lines = [delimiter.join(names)]
    lines += [delimiter.join(str(v) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@pytest.fixture
def course_csv(tmp_path):
    path = tmp_path / "course.csv"
    write_csv(path, COURSE_NAMES, COURSE_ROWS)
    return path


# --- acceptance-criteria reporting -----------------------------------------
# Tests marked @pytest.mark.acceptance("A1", "label") get one summary line
# each ("[A1] label: PASS" or ": FAIL") after the run.

_ACCEPTANCE_RESULTS: list[tuple[str, str, bool]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is not None:
        tag, label = marker.args
        _ACCEPTANCE_RESULTS.append((tag, label, report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    def _key(entry):
        tag = entry[0]
        digits = "".join(ch for ch in tag if ch.isdigit())
        return (int(digits) if digits else 0, tag)
    for tag, label, passed in sorted(_ACCEPTANCE_RESULTS, key=_key):
        terminalreporter.write_line(f"[{tag}] {label}: {'PASS' if passed else 'FAIL'}")
