import json
import os

import pytest

from src.constants import FIXTURES_DIR
from src.data_access.matrix_file import MatrixFile
from src.entity.symmetric_matrix import SymmetricMatrix


@pytest.fixture
def fixture_path():
    def _path(name: str) -> str:
        return os.path.join(FIXTURES_DIR, name)
    return _path


@pytest.fixture
def counterexample_matrix(fixture_path) -> SymmetricMatrix:
    return MatrixFile(fixture_path("cdj_counterexample.json")).load_matrix()


@pytest.fixture
def cubic_example(fixture_path):
    A = MatrixFile(fixture_path("cubic_vector_state_matrix.json")).load_matrix()
    x = MatrixFile(fixture_path("cubic_vector_state_x.json")).load_vector()
    return A, x


@pytest.fixture
def kantorovich_matrix(fixture_path) -> SymmetricMatrix:
    return MatrixFile(fixture_path("kantorovich_trace_example.json")).load_matrix()


@pytest.fixture
def write_matrix_file(tmp_path):
    """Writes arbitrary JSON content (or a matrix) to a file under tmp_path and returns its path."""
    def _write(content, name: str = "matrix.json") -> str:
        if isinstance(content, SymmetricMatrix):
            content = {"dim": content.dim, "data": content.entries.reshape(-1).tolist()}
        path = tmp_path / name
        path.write_text(content if isinstance(content, str) else json.dumps(content), encoding="utf-8")
        return str(path)
    return _write
