"""Trained-model directories.

    manifest.txt   format_version, N, M, K, D, sweeps, burn_in, seed, snapshot_count,
                   snapshot_sweeps (comma separated), feature_coupling
    P_0001.csv ... coupling matrix per snapshot, D x D
    Q_0001.csv ... coupling intercept per snapshot, 1 x D
    V_0001.csv ... version factor per snapshot, D x M
    T_0001.csv ... parameter factor per snapshot, D x K
    U_0001.csv ... coupled image factor of the training rows, D x N
    trace.csv      RMSE trace
"""

import logging
import os

from fbptf.errors import SchemaError
from fbptf.model.dims import ModelDims
from fbptf.model.trained_model import Snapshot, TrainedModel
from fbptf.numerics.csv_io import format_matrix, read_matrix
from fbptf.persistence.atomic import atomic_path
from fbptf.persistence.curves import format_curves, parse_curves
from fbptf.persistence.interface import IAdapter
from fbptf.persistence.manifest import format_manifest, read_manifest, validate


FORMAT_VERSION = 1
MANIFEST_SCHEMA = "model-manifest-schema.json"
SNAPSHOT_MEMBER_NAME_FORMAT = "{}_{:04d}.csv"


class ModelAdapter(IAdapter):

    def __init__(self):

        self._logger = logging.getLogger(__name__)

    def read(self, path: str) -> TrainedModel:

        self._logger.debug("Reading model from: {}".format(path))

        if not os.path.isdir(path):
            raise SchemaError("Model path is not a directory", path=path)

        manifest = read_manifest(os.path.join(path, "manifest.txt"), MANIFEST_SCHEMA)

        dims = ModelDims(manifest["N"], manifest["M"], manifest["K"], manifest["D"])
        sweeps = [int(sweep) for sweep in str(manifest["snapshot_sweeps"]).split(",")]

        if len(sweeps) != manifest["snapshot_count"]:
            raise SchemaError(
                f"snapshot_sweeps lists {len(sweeps)} sweeps, snapshot_count is {manifest['snapshot_count']}",
                path=os.path.join(path, "manifest.txt"),
            )

        snapshots = []
        for number, sweep in enumerate(sweeps, start=1):

            snapshot = self._read_snapshot(path, number, sweep)

            if not snapshot.is_consistent_with(dims):
                raise SchemaError(f"Snapshot {number} does not match {dims}", path=path)

            snapshots.append(snapshot)

        trace_path = os.path.join(path, "trace.csv")
        trace = parse_curves(trace_path) if os.path.isfile(trace_path) else []

        return TrainedModel(
            dims,
            snapshots,
            trace,
            sweeps=manifest["sweeps"],
            burn_in=manifest["burn_in"],
            seed=manifest["seed"],
            feature_coupling=manifest["feature_coupling"],
        )

    def write(self, model: TrainedModel, path: str, *, override_if_existing: bool = False) -> None:

        self._logger.debug("Writing model with {} snapshots to: {}".format(model.get_snapshot_count(), path))

        dims = model.get_dims()

        manifest = {
            "format_version": FORMAT_VERSION,
            "N": dims.N,
            "M": dims.M,
            "K": dims.K,
            "D": dims.D,
            "sweeps": model.get_sweeps(),
            "burn_in": model.get_burn_in(),
            "seed": model.get_seed(),
            "snapshot_count": model.get_snapshot_count(),
            "snapshot_sweeps": ",".join(str(snapshot.get_sweep()) for snapshot in model.get_snapshots()),
            "feature_coupling": model.has_feature_coupling(),
        }

        validate(manifest, MANIFEST_SCHEMA)

        with atomic_path(path, override_if_existing=override_if_existing, directory=True) as temporary_path:

            def add_file(name: str, content: str) -> None:

                with open(os.path.join(temporary_path, name), "w") as file_handle:
                    file_handle.write(content)

            add_file("manifest.txt", format_manifest(manifest))
            add_file("trace.csv", format_curves(model.get_rmse_trace()))

            for number, snapshot in enumerate(model.get_snapshots(), start=1):

                add_file(SNAPSHOT_MEMBER_NAME_FORMAT.format("P", number), format_matrix(snapshot.get_P()))
                add_file(SNAPSHOT_MEMBER_NAME_FORMAT.format("Q", number), format_matrix(snapshot.get_Q()))
                add_file(SNAPSHOT_MEMBER_NAME_FORMAT.format("V", number), format_matrix(snapshot.get_V()))
                add_file(SNAPSHOT_MEMBER_NAME_FORMAT.format("T", number), format_matrix(snapshot.get_T()))

                if snapshot.get_U_hat() is not None:
                    add_file(SNAPSHOT_MEMBER_NAME_FORMAT.format("U", number), format_matrix(snapshot.get_U_hat()))

    def _read_snapshot(self, path: str, number: int, sweep: int) -> Snapshot:

        def member(name: str):

            return read_matrix(os.path.join(path, SNAPSHOT_MEMBER_NAME_FORMAT.format(name, number)))

        u_path = os.path.join(path, SNAPSHOT_MEMBER_NAME_FORMAT.format("U", number))
        U_hat = member("U") if os.path.isfile(u_path) else None

        return Snapshot(member("P"), member("Q"), member("V"), member("T"), U_hat, sweep=sweep)


def load_model(path: str) -> TrainedModel:

    return ModelAdapter().read(path)


def save_model(model: TrainedModel, path: str, *, override_if_existing: bool = False) -> None:

    ModelAdapter().write(model, path, override_if_existing=override_if_existing)
