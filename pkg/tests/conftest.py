import json
from pathlib import Path

import pytest

from chainsymp.graph import ChainDigraph

FIXTURES = Path(__file__).parent / "fixtures"


def load_graph(name: str) -> ChainDigraph:
    return ChainDigraph.from_dict(json.loads((FIXTURES / f"{name}.json").read_text()))


@pytest.fixture
def fixture_graph():
    return load_graph


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
