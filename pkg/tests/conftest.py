"""
Pytest configuration and fixtures for ramcode tests.
"""

import shutil
import tempfile
from pathlib import Path
from typing import Generator

import pytest

from ramcode.codes.classical import BipartiteCode, path_code
from ramcode.codes.product import ProductCode, build_product
from ramcode.complexes.lsv import QuotientBuild, build_quotient, build_structure
from ramcode.complexes.simplicial import SimplicialComplex, fixture_cone, fixture_torus, fixture_triangle
from ramcode.core.config import Settings
from ramcode.linalg.gf2 import BinaryMatrix
from ramcode.services.storage import StorageService


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for tests."""
    temp_dir = Path(tempfile.mkdtemp())
    yield temp_dir
    shutil.rmtree(temp_dir)


@pytest.fixture
def test_settings() -> Settings:
    """Create test settings."""
    return Settings(environment="testing", debug=True)


@pytest.fixture
def storage() -> StorageService:
    return StorageService()


@pytest.fixture(scope="session")
def torus() -> SimplicialComplex:
    """T(3,3): 9 vertices, 27 edges, 18 triangles."""
    return fixture_torus(3, 3)


@pytest.fixture(scope="session")
def torus_4x4() -> SimplicialComplex:
    return fixture_torus(4, 4)


@pytest.fixture(scope="session")
def triangle() -> SimplicialComplex:
    return fixture_triangle()


@pytest.fixture(scope="session")
def cone() -> SimplicialComplex:
    """Cone over the 4-cycle."""
    return fixture_cone(4)


@pytest.fixture(scope="session")
def path2() -> BipartiteCode:
    return path_code(2)


@pytest.fixture(scope="session")
def path3() -> BipartiteCode:
    return path_code(3)


@pytest.fixture(scope="session")
def hamming() -> BipartiteCode:
    """[7, 4, 3] Hamming code."""
    h = BinaryMatrix.from_dense(
        [
            [1, 0, 1, 0, 1, 0, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [0, 0, 0, 1, 1, 1, 1],
        ]
    )
    return BipartiteCode(h)


@pytest.fixture(scope="session")
def torus_product(torus: SimplicialComplex, path2: BipartiteCode) -> ProductCode:
    """T(3,3) x path(2): N = 72."""
    return build_product(torus, path2)


@pytest.fixture(scope="session")
def torus_path3(torus: SimplicialComplex, path3: BipartiteCode) -> ProductCode:
    return build_product(torus, path3)


@pytest.fixture(scope="session")
def triangle_product(triangle: SimplicialComplex, path2: BipartiteCode) -> ProductCode:
    """Single triangle x path(2): N = 7, K = 0."""
    return build_product(triangle, path2)


@pytest.fixture(scope="session")
def lsv_q2() -> QuotientBuild:
    """Quotient for q = 2, d = 3, p_y = 1 + y + y^2. Slow: only request it from slow tests."""
    return build_quotient(build_structure(2, 3, 2, [1, 1, 1]))
