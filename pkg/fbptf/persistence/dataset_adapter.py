"""Dataset directories.

    manifest.txt   key = value lines: format_version, N, M, K, L and a provenance echo
    params.csv     N rows of K low-quality parameters
    features.csv   N rows of L features
    versions.csv   N M rows: image_id, version_id (1..M), K parameters
    ids.txt        optional, one identifier per line in row order
"""

import logging
import os

import numpy as np

from fbptf.dataset.parameter_dataset import ParameterDataset
from fbptf.dataset.identifier import default_identifiers
from fbptf.errors import SchemaError
from fbptf.numerics.csv_io import FLOAT_FORMAT, format_matrix, read_matrix
from fbptf.persistence.atomic import atomic_path
from fbptf.persistence.interface import IAdapter
from fbptf.persistence.manifest import format_manifest, read_manifest, validate


FORMAT_VERSION = 1
MANIFEST_SCHEMA = "dataset-manifest-schema.json"


class DatasetAdapter(IAdapter):

    def __init__(self):

        self._logger = logging.getLogger(__name__)

    def read(self, path: str) -> ParameterDataset:

        self._logger.debug("Reading dataset from: {}".format(path))

        if not os.path.isdir(path):
            raise SchemaError("Dataset path is not a directory", path=path)

        manifest_path = os.path.join(path, "manifest.txt")
        manifest = read_manifest(manifest_path, MANIFEST_SCHEMA)

        N, M, K, L = (manifest[key] for key in ("N", "M", "K", "L"))

        params = self._read_sized(os.path.join(path, "params.csv"), N, K)
        features = self._read_sized(os.path.join(path, "features.csv"), N, L)

        ids = self._read_ids(os.path.join(path, "ids.txt"), N)
        A_prime = self._read_versions(os.path.join(path, "versions.csv"), ids, M, K)

        provenance = {
            key: value
            for key, value in manifest.items()
            if key not in ("format_version", "N", "M", "K", "L")
        }

        return ParameterDataset(params.T, A_prime, features.T, ids, provenance)

    def write(self, dataset: ParameterDataset, path: str, *, override_if_existing: bool = False) -> None:

        self._logger.debug("Writing dataset to: {}".format(path))

        manifest = {
            "format_version": FORMAT_VERSION,
            "N": dataset.get_N(),
            "M": dataset.get_M(),
            "K": dataset.get_K(),
            "L": dataset.get_L(),
        }
        manifest.update(dataset.get_provenance())

        # make sure the result will actually be readable
        validate(manifest, MANIFEST_SCHEMA)

        with atomic_path(path, override_if_existing=override_if_existing, directory=True) as temporary_path:

            def add_file(name: str, content: str) -> None:

                with open(os.path.join(temporary_path, name), "w") as file_handle:
                    file_handle.write(content)

            add_file("manifest.txt", format_manifest(manifest))
            add_file("params.csv", format_matrix(dataset.get_A().T))
            add_file("features.csv", format_matrix(dataset.get_F().T))
            add_file("versions.csv", self._format_versions(dataset))
            add_file("ids.txt", "".join(f"{identifier}\n" for identifier in dataset.get_ids()))

    def _read_sized(self, path: str, rows: int, columns: int) -> np.ndarray:

        matrix = read_matrix(path)

        if matrix.shape != (rows, columns):
            raise SchemaError(f"Expected {rows} rows of {columns} values, found {matrix.shape[0]} rows of {matrix.shape[1]}", path=path)

        return matrix

    def _read_ids(self, path: str, count: int):

        if not os.path.isfile(path):
            return default_identifiers(count)

        with open(path, "r") as file_handle:
            ids = [line.strip() for line in file_handle if line.strip()]

        if len(ids) != count:
            raise SchemaError(f"Expected {count} identifiers, found {len(ids)}", path=path)

        return ids

    def _read_versions(self, path: str, ids, M: int, K: int) -> np.ndarray:

        if not os.path.isfile(path):
            raise SchemaError("Missing versions file", path=path)

        rows = {identifier: row for row, identifier in enumerate(ids)}
        A_prime = np.full((K, len(ids), M), np.nan)

        with open(path, "r") as file_handle:

            for line_number, line in enumerate(file_handle, start=1):

                line = line.strip()
                if not line:
                    continue

                cells = line.split(",")

                if len(cells) != 2 + K:
                    raise SchemaError(f"Expected {2 + K} columns, found {len(cells)}", path=path, line=line_number)

                if cells[0] not in rows:
                    raise SchemaError(f"Unknown image id '{cells[0]}'", path=path, line=line_number, column=1)

                try:
                    version = int(cells[1])
                except ValueError:
                    raise SchemaError(f"Not a version number: '{cells[1]}'", path=path, line=line_number, column=2)

                if not 1 <= version <= M:
                    raise SchemaError(f"Version {version} outside 1..{M}", path=path, line=line_number, column=2)

                row = rows[cells[0]]

                if not np.all(np.isnan(A_prime[:, row, version - 1])):
                    raise SchemaError(f"Duplicate row for image '{cells[0]}' version {version}", path=path, line=line_number)

                for column, cell in enumerate(cells[2:], start=3):
                    try:
                        A_prime[column - 3, row, version - 1] = float(cell)
                    except ValueError:
                        raise SchemaError(f"Not a number: '{cell}'", path=path, line=line_number, column=column)

        missing = np.argwhere(np.isnan(A_prime[0]))
        if missing.size:
            row, version = missing[0]
            raise SchemaError(f"Missing row for image '{ids[row]}' version {version + 1}", path=path)

        return A_prime

    def _format_versions(self, dataset: ParameterDataset) -> str:

        lines = []
        A_prime = dataset.get_A_prime()

        for row, identifier in enumerate(dataset.get_ids()):
            for version in range(dataset.get_M()):
                values = ",".join(FLOAT_FORMAT % value for value in A_prime[:, row, version])
                lines.append(f"{identifier},{version + 1},{values}\n")

        return "".join(lines)


def load_dataset(path: str) -> ParameterDataset:

    return DatasetAdapter().read(path)
