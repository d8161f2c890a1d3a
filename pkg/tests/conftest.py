"""Pytest configuration and shared fixtures for nonrep tests."""

import os
import random
from pathlib import Path

import pytest

from nonrep.models.sequence import Sequence
from nonrep.models.tree import TreeShape


def pytest_collection_modifyitems(config: pytest.Config, items: list[pytest.Item]) -> None:
    """Skip tests marked long unless NONREP_RUN_LONG=1."""
    if os.environ.get("NONREP_RUN_LONG") == "1":
        return
    skip_long = pytest.mark.skip(reason="long profile; set NONREP_RUN_LONG=1 to run")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """Run every test without NONREP_ settings and away from any .env file."""
    for key in list(os.environ):
        if key.startswith("NONREP_") and key != "NONREP_RUN_LONG":
            monkeypatch.delenv(key, raising=False)
    monkeypatch.chdir(tmp_path)


@pytest.fixture
def rng() -> random.Random:
    """Return a seeded random generator."""
    return random.Random(20240611)


@pytest.fixture
def s42() -> Sequence:
    """Return the word 1 2 3 4 1 2."""
    return Sequence.from_external([1, 2, 3, 4, 1, 2])


@pytest.fixture
def binary_tree_h3() -> TreeShape:
    """Return T_{2,3}."""
    return TreeShape(k=2, h=3)
