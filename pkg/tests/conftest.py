"""
Shared test fixtures and utilities.
"""

import pytest

from adapters.instances import emit
from domain.persistence import PersistencePosetMap
from tests.base_test import (
    chain,
    circle,
    constant,
    diamond,
    empty_fiber_map,
    merge_map,
)


@pytest.fixture
def identity_chain_map():
    """Identity on the constant chain a < b."""
    return PersistencePosetMap.identity(constant(chain("ab")))


@pytest.fixture
def merge():
    """Map whose fiber over the top point merges one step late."""
    return merge_map()


@pytest.fixture
def write_instance(tmp_path):
    """Write an instance document into tmp_path and return its path."""

    def write(name, instance, meta=None):
        path = tmp_path / name
        path.write_text(emit(instance, meta), encoding="utf-8")
        return path

    return write


@pytest.fixture
def identity_map_file(write_instance, identity_chain_map):
    return write_instance("identity.json", identity_chain_map)


@pytest.fixture
def merge_map_file(write_instance, merge):
    return write_instance("merge.json", merge)


@pytest.fixture
def empty_fiber_file(write_instance):
    return write_instance("empty_fiber.json", empty_fiber_map())


@pytest.fixture
def circle_file(write_instance):
    return write_instance("circle.json", constant(circle()))


@pytest.fixture
def diamond_file(write_instance):
    return write_instance("diamond.json", constant(diamond()))
