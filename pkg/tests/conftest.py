import os
import random

import pytest

from sullivan.family import build_family


@pytest.fixture(scope="session")
def seed() -> int:
    return int(os.environ.get("SULLIVAN_TEST_SEED", "20261015"))


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


@pytest.fixture(scope="session")
def fam1():
    return build_family(1)


@pytest.fixture(scope="session")
def fam2():
    return build_family(2)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: int(k)):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")
