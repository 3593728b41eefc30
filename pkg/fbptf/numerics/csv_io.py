"""Round-trip exact CSV serialization of matrices."""

import io
import os

import numpy as np

from fbptf.errors import SchemaError
from fbptf.numerics.linalg import as_matrix


FLOAT_FORMAT = "%.17g"


def format_matrix(matrix: np.ndarray) -> str:
    """Renders a matrix as header-less CSV with 17 significant digits."""

    matrix = np.atleast_2d(np.asarray(matrix, dtype=np.float64))

    buffer = io.StringIO()
    np.savetxt(buffer, matrix, fmt=FLOAT_FORMAT, delimiter=",")

    return buffer.getvalue()


def write_matrix(matrix: np.ndarray, path: str) -> None:

    with open(path, "w") as file_handle:
        file_handle.write(format_matrix(matrix))


def read_matrix(path: str) -> np.ndarray:
    """Reads a header-less CSV matrix, reporting malformed cells with line and column."""

    if not os.path.isfile(path):
        raise SchemaError("Missing matrix file", path=path)

    rows = []
    width = None

    with open(path, "r") as file_handle:

        for line_number, line in enumerate(file_handle, start=1):

            line = line.strip()
            if not line:
                continue

            cells = line.split(",")

            if width is None:
                width = len(cells)

            elif len(cells) != width:
                raise SchemaError(f"Expected {width} columns, found {len(cells)}", path=path, line=line_number)

            row = []
            for column_number, cell in enumerate(cells, start=1):

                try:
                    row.append(float(cell))

                except ValueError:
                    raise SchemaError(f"Not a number: '{cell}'", path=path, line=line_number, column=column_number)

            rows.append(row)

    if not rows:
        raise SchemaError("Matrix file is empty", path=path)

    return as_matrix(rows, name=os.path.basename(path))
