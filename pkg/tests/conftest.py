import json
from fractions import Fraction
from pathlib import Path

import pytest

from ldpc_acwd import Budgets, EnsembleEvaluator, Settings, bipartite

SPECS = Path(__file__).parent / "specs"

F = Fraction


# sigma rows, w columns
CA_TABLE = [
    [F(1), F(18, 11), F(37, 11), F(60, 11), F(37, 11), F(18, 11), F(1)],
    [F(0)] * 7,
    [F(0), F(16, 11), F(128, 33), F(160, 33), F(128, 33), F(16, 11), F(0)],
    [F(0)] * 7,
]

CB_TABLE = [
    [F(v) for v in (1, 0, 3, 0, 3, 0, 1)],
    [F(v) for v in (0, 2, 0, 4, 0, 2, 0)],
    [F(v) for v in (0, 0, 4, 0, 4, 0, 0)],
    [F(v) for v in (0, 0, 0, 8, 0, 0, 0)],
]

SHUFFLED_STACK_TABLE = [
    [F(1), F(0), F(37, 55), F(0), F(37, 55), F(0), F(1)],
    [F(0), F(3, 11), F(0), F(6, 11), F(0), F(3, 11), F(0)],
    [F(0), F(0), F(92, 275), F(0), F(92, 275), F(0), F(0)],
    [F(0), F(12, 55), F(0), F(6, 11), F(0), F(12, 55), F(0)],
    [F(0), F(0), F(512, 825), F(0), F(512, 825), F(0), F(0)],
    [F(0), F(0), F(0), F(32, 33), F(0), F(0), F(0)],
    [F(0)] * 7,
]

CONCAT_TABLE = [
    [F(1), F(18, 11), F(70, 11), F(306, 11), F(63), F(1084, 11), F(1268, 11),
     F(1084, 11), F(63), F(306, 11), F(70, 11), F(18, 11), F(1)],
    [F(0), F(2), F(100, 11), F(866, 33), F(1984, 33), F(3292, 33), F(3880, 33),
     F(3292, 33), F(1984, 33), F(866, 33), F(100, 11), F(2), F(0)],
    [F(0), F(16, 11), F(260, 33), F(904, 33), F(64), F(3272, 33), F(3704, 33),
     F(3272, 33), F(64), F(904, 33), F(260, 33), F(16, 11), F(0)],
    [F(0), F(0), F(96, 11), F(344, 11), F(656, 11), F(1064, 11), F(1312, 11),
     F(1064, 11), F(656, 11), F(344, 11), F(96, 11), F(0), F(0)],
]


@pytest.fixture
def evaluator():
    return EnsembleEvaluator(budgets=Budgets(), settings=Settings(workers=2))


@pytest.fixture
def ca():
    """(2,4)-regular bipartite, column size 6, row size 3."""
    return bipartite(2, 4, 6, 3)


@pytest.fixture
def cb():
    """(1,2)-regular bipartite, column size 6, row size 3."""
    return bipartite(1, 2, 6, 3)


@pytest.fixture
def spec_path():
    def path(name: str) -> str:
        return str(SPECS / name)

    return path


@pytest.fixture
def spec_document():
    def load(name: str):
        return json.loads((SPECS / name).read_text())

    return load
