"""Shared fixtures: the catalog data, built once per test session."""

import pytest

# one pass/fail line per acceptance criterion, echoed after the run
# (output capture would otherwise swallow them)
acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)

from symkring.catalog import example_spec
from symkring.fans import build_positive_fan
from symkring.root_data import build_symmetric_datum


@pytest.fixture(scope="session")
def pgl6():
    return build_symmetric_datum(example_spec("pgl6_psp6"))


@pytest.fixture(scope="session")
def pgl6_fan(pgl6):
    return build_positive_fan(pgl6)


@pytest.fixture(scope="session")
def pgl6_split_fan(pgl6):
    return build_positive_fan(pgl6, example_spec("pgl6_psp6_split")["subdivision"])


@pytest.fixture(scope="session")
def group_a1():
    return build_symmetric_datum(example_spec("group_a1"))


@pytest.fixture(scope="session")
def group_a1_fan(group_a1):
    return build_positive_fan(group_a1)


@pytest.fixture(scope="session")
def group_a2():
    return build_symmetric_datum(example_spec("group_a2"))


@pytest.fixture(scope="session")
def group_a2_fan(group_a2):
    return build_positive_fan(group_a2)


@pytest.fixture(scope="session")
def group_a2_split_fan(group_a2):
    return build_positive_fan(group_a2, example_spec("group_a2_split")["subdivision"])


@pytest.fixture(scope="session")
def sl4():
    return build_symmetric_datum(example_spec("sl4_su22"))
