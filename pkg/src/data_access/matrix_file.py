import json
import math
import sys
from typing import List

import numpy as np

from src.entity.symmetric_matrix import SymmetricMatrix
from src.exception import MatrixFileError, MyException, reraise_domain_error
from src.logger import logging


class MatrixFile:
    """
    Reader for {"dim": n, "data": [...]} files: n*n row-major entries for a matrix,
    n entries for a vector. Parsing is strict; any deviation is a MatrixFileError.
    """

    def __init__(self, file_path: str):
        self.file_path = file_path

    def _load(self) -> dict:
        try:
            with open(self.file_path, "r", encoding="utf-8") as file:
                content = json.load(file)
        except FileNotFoundError:
            raise MatrixFileError(f"matrix file not found: {self.file_path}") from None
        except (json.JSONDecodeError, UnicodeDecodeError) as e:
            raise MatrixFileError(f"{self.file_path} is not valid JSON: {e}") from None

        if not isinstance(content, dict) or set(content) != {"dim", "data"}:
            raise MatrixFileError(f"{self.file_path}: expected exactly the keys 'dim' and 'data'")
        dim = content["dim"]
        if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
            raise MatrixFileError(f"{self.file_path}: 'dim' must be a positive integer, got {dim!r}")
        data = content["data"]
        if not isinstance(data, list) or not all(self._is_number(x) for x in data):
            raise MatrixFileError(f"{self.file_path}: 'data' must be a flat list of finite numbers")
        return content

    @staticmethod
    def _is_number(value) -> bool:
        return not isinstance(value, bool) and isinstance(value, (int, float)) and math.isfinite(value)

    def load_matrix(self) -> SymmetricMatrix:
        try:
            content = self._load()
            dim, data = content["dim"], content["data"]
            if len(data) != dim * dim:
                raise MatrixFileError(f"{self.file_path}: dim {dim} needs {dim * dim} entries, got {len(data)}")
            matrix = SymmetricMatrix.from_array(np.asarray(data, dtype=np.float64).reshape(dim, dim))
            logging.info(f"Loaded {dim}x{dim} matrix from {self.file_path}")
            return matrix

        except Exception as e:
            reraise_domain_error(e)
            raise MyException(e, sys) from e

    def load_vector(self) -> np.ndarray:
        try:
            content = self._load()
            dim, data = content["dim"], content["data"]
            if len(data) != dim:
                raise MatrixFileError(f"{self.file_path}: vector of dim {dim} needs {dim} entries, got {len(data)}")
            return np.asarray(data, dtype=np.float64)

        except Exception as e:
            reraise_domain_error(e)
            raise MyException(e, sys) from e


def matrix_to_file_content(matrix: SymmetricMatrix) -> dict:
    data: List[float] = [float(x) for x in matrix.entries.reshape(-1)]
    return {"dim": matrix.dim, "data": data}
