import os

import pytest

import core.config
from core.instance import Instance, validate_instance
from core.instance_file import write_instance_file


@pytest.fixture(autouse=True)
def clean_solver_config(monkeypatch):
    """Run every test against default settings, whatever the shell exports."""
    for name in list(os.environ):
        if name.startswith("IP01_"):
            monkeypatch.delenv(name, raising=False)
    # the singleton is rebuilt lazily from the cleaned environment
    monkeypatch.setattr(core.config, "_solver_config", None)


@pytest.fixture
def subset_sum_2357() -> Instance:
    """Weights (2, 3, 5, 7), target 5: solutions 1100 and 0010."""
    return validate_instance(4, 1, [[2, 3, 5, 7]], [5])


@pytest.fixture
def choose_two() -> Instance:
    """Pick two of four items at costs (5, 1, 3, 2): optimum 3 at 0101."""
    return validate_instance(4, 1, [[1, 1, 1, 1]], [2], [5, 1, 3, 2])


@pytest.fixture
def unreachable() -> Instance:
    return validate_instance(2, 1, [[1, 1]], [3])


@pytest.fixture
def write_instance(tmp_path):
    """Write an instance (and optional comments) to a file and return its path."""

    def _write(instance: Instance, name: str = "instance.ip01", comments=()) -> str:
        path = tmp_path / name
        path.write_bytes(write_instance_file(instance, comments))
        return str(path)

    return _write
