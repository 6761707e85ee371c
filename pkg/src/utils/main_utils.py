import json
import math
import os
import sys
from typing import List

import yaml
from pandas import DataFrame

from src.exception import MyException
from src.logger import logging


def read_yaml_file(file_path: str) -> dict:
    try:
        with open(file_path, "rb") as yaml_file:
            return yaml.safe_load(yaml_file) or {}

    except Exception as e:
        raise MyException(e, sys) from e


def read_json_file(file_path: str) -> object:
    try:
        with open(file_path, "r", encoding="utf-8") as json_file:
            return json.load(json_file)

    except Exception as e:
        raise MyException(e, sys) from e


def _finite_or_null(content: object) -> object:
    if isinstance(content, float):
        return content if math.isfinite(content) else None
    if isinstance(content, dict):
        return {key: _finite_or_null(value) for key, value in content.items()}
    if isinstance(content, (list, tuple)):
        return [_finite_or_null(value) for value in content]
    return content


def dump_json(content: object) -> str:
    """Stable JSON text; floats are written with repr so they parse back to the same double.
    NaN and infinities become null."""
    return json.dumps(_finite_or_null(content), indent=2, sort_keys=True, allow_nan=False)


def write_json_file(file_path: str, content: object) -> None:
    try:
        dir_path = os.path.dirname(file_path)
        if dir_path:
            os.makedirs(dir_path, exist_ok=True)
        with open(file_path, "w", encoding="utf-8") as file:
            file.write(dump_json(content))
            file.write("\n")
        logging.info(f"Wrote JSON report to {file_path}")

    except Exception as e:
        raise MyException(e, sys) from e


def write_csv_file(file_path: str, rows: List[dict], columns: List[str]) -> DataFrame:
    """
    Saves rows as CSV with the given column order
    file_path: str location of file to save
    return: the DataFrame that was written
    """
    try:
        dir_path = os.path.dirname(file_path)
        if dir_path:
            os.makedirs(dir_path, exist_ok=True)
        dataframe = DataFrame(rows, columns=columns)
        dataframe.to_csv(file_path, index=False, float_format="%.17g")
        logging.info(f"Wrote {len(dataframe)} rows to {file_path}")
        return dataframe

    except Exception as e:
        raise MyException(e, sys) from e
