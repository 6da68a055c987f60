import pytest

from lefkit import fixtures

_cache = {}


def get_fixture(name):
    if name not in _cache:
        _cache[name] = fixtures.load(name)
    return _cache[name]


@pytest.fixture(scope="session")
def cx():
    """Factory for the shipped fixture complexes, loaded from their JSON files."""
    return get_fixture
