"""
Shared pytest fixtures and configuration
"""
import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.apps.graph.models import Graph
from app.apps.graph.utils.generators import GeneratorParams, complete, cycle, generate, petersen
from app.apps.oracle.services.oracle_cache import OracleCache


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def two_triangles() -> Graph:
    """Two triangles sharing vertex 2."""
    return Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def random_regular(n: int, d: int, seed: int = 0) -> Graph:
    return generate("random-regular", GeneratorParams(n=n, d=d), seed=seed)


@pytest.fixture
def k4() -> Graph:
    return complete(4)


@pytest.fixture
def k5() -> Graph:
    return complete(5)


@pytest.fixture
def k20() -> Graph:
    return complete(20)


@pytest.fixture
def c7() -> Graph:
    return cycle(7)


@pytest.fixture
def c50() -> Graph:
    return cycle(50)


@pytest.fixture
def petersen_graph() -> Graph:
    return petersen()


@pytest.fixture
def oracle_cache(tmp_path) -> OracleCache:
    """Oracle cache in a per-test directory"""
    return OracleCache(tmp_path / "oracle")


@pytest.fixture
def isolated_cache(tmp_path, monkeypatch):
    """Routes the singleton oracle cache to a per-test directory"""
    cache = OracleCache(tmp_path / "oracle-singleton")
    monkeypatch.setattr("app.apps.oracle.services.oracle_cache._oracle_cache", cache)
    return cache


@pytest.fixture(scope="function")
def client(isolated_cache) -> TestClient:
    """
    Create a test client for the HTTP surface.
    """
    with TestClient(app) as test_client:
        yield test_client
