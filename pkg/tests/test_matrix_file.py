import numpy as np
import pytest

from src.data_access.matrix_file import MatrixFile, matrix_to_file_content
from src.entity.symmetric_matrix import SymmetricMatrix
from src.exception import InvalidMatrix, MatrixFileError


def test_load_matrix(write_matrix_file):
    path = write_matrix_file({"dim": 2, "data": [3, -2, -2, 7]})
    matrix = MatrixFile(path).load_matrix()
    assert matrix.to_list() == [[3.0, -2.0], [-2.0, 7.0]]


def test_written_matrix_loads_back(write_matrix_file):
    A = SymmetricMatrix.from_array([[1.0, 0.25, 0.0], [0.25, 2.0, -1.0], [0.0, -1.0, 3.0]])
    path = write_matrix_file(matrix_to_file_content(A))
    assert MatrixFile(path).load_matrix().allclose(A, atol=0.0)


@pytest.mark.parametrize("content", [
    {"dim": 2, "data": [1, 0, 0]},
    {"dim": 2},
    {"data": [1.0]},
    {"dim": 1, "data": [1.0], "extra": True},
    {"dim": True, "data": [1.0]},
    {"dim": 0, "data": []},
    {"dim": 2.0, "data": [1, 0, 0, 1]},
    {"dim": 1, "data": ["1"]},
    {"dim": 1, "data": [[1.0]]},
    [1, 0, 0, 1],
    "{\"dim\": 1, \"data\": [NaN]}",
    "{\"dim\": 1, \"data\": [Infinity]}",
    "{\"dim\": 2, \"data\": [1, 0, 0,",
])
def test_malformed_files_are_rejected(write_matrix_file, content):
    with pytest.raises(MatrixFileError):
        MatrixFile(write_matrix_file(content)).load_matrix()


def test_missing_file(tmp_path):
    with pytest.raises(MatrixFileError):
        MatrixFile(str(tmp_path / "absent.json")).load_matrix()


def test_asymmetric_matrix_is_invalid(write_matrix_file):
    with pytest.raises(InvalidMatrix):
        MatrixFile(write_matrix_file({"dim": 2, "data": [1, 2, 0, 1]})).load_matrix()


def test_load_vector(fixture_path, write_matrix_file):
    x = MatrixFile(fixture_path("cubic_vector_state_x.json")).load_vector()
    assert np.allclose(x, np.full(3, 1.0 / np.sqrt(3.0)))
    assert np.linalg.norm(x) == pytest.approx(1.0)

    with pytest.raises(MatrixFileError):
        MatrixFile(write_matrix_file({"dim": 3, "data": [1.0, 0.0]})).load_vector()
