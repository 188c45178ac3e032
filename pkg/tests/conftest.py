"""Shared fixtures, random CSS builders, and the acceptance summary printout."""

import numpy as np
import pytest

from cssnet import CssArray, SampleDesign


def make_random_css(rng, n, density=None, relation="advice"):
    """Random binary CSS with zeroed diagonals; density drawn if not given."""
    if density is None:
        density = rng.uniform(0.05, 0.6)
    cells = (rng.random((n, n, n)) < density).astype(np.uint8)
    idx = np.arange(n)
    cells[idx, idx, :] = 0
    return CssArray(n_actors=n, relation_name=relation, cells=cells)


def random_sample(rng, n_actors, n=None):
    if n is None:
        n = int(rng.integers(2, n_actors + 1))
    ids0 = rng.choice(n_actors, size=n, replace=False)
    return SampleDesign(actor_ids=tuple(sorted(int(a) + 1 for a in ids0)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


# --- acceptance criteria reporting -----------------------------------------

_ACCEPTANCE_RESULTS = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.failed):
        _ACCEPTANCE_RESULTS[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[name]
        tag = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"  {tag}  {name}")
