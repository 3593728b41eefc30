"""Runs one model over the splits of a dataset and reports pooled test RMSE.

Output directory:
    report.json       per-fold and mean RMSE, wall times, configuration echo
    curves.csv        RMSE trace of the first fold (factorization models)
    predictions.csv   image_id, version_id, fold, predicted then true parameters
"""

import json
import logging
import os
import time
from dataclasses import replace
from typing import List, Optional, Tuple

import numpy as np

from fbptf.baselines.layout import regression_inputs, stack_versions, unstack_versions
from fbptf.baselines.matrix_factorization import train_fold_in
from fbptf.baselines.mlr import mlr_fit
from fbptf.baselines.wknn import WeightedNeighbours
from fbptf.dataset.parameter_dataset import ParameterDataset
from fbptf.errors import ConfigError, FbptfError, RejectedStateError
from fbptf.harness.config import ExperimentConfig
from fbptf.l21.config import L21Config
from fbptf.model.dims import ModelDims
from fbptf.model.gibbs import Validation, train
from fbptf.model.prediction import clip, predict_batch
from fbptf.model.trained_model import RmseTraceEntry
from fbptf.numerics.metrics import rmse
from fbptf.numerics.random import RngStream
from fbptf.persistence.atomic import write_text
from fbptf.persistence.curves import format_curves
from fbptf.persistence.dataset_adapter import load_dataset
from fbptf.persistence.manifest import validate
from fbptf.synthetic.folds import split_folds


logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
REPORT_SCHEMA = "report-schema.json"

# (beta, gamma) pairs of the sensitivity table; delta = gamma / beta
SENSITIVITY_GRID = (
    (0.001, 6.0),
    (0.01, 6.0),
    (0.02, 0.1),
    (0.2, 0.05),
    (0.8, 0.05),
    (0.1, 0.3),
    (0.1, 0.8),
    (0.1, 2.0),
)

Split = Tuple[np.ndarray, np.ndarray, np.ndarray]


class FoldResult:

    def __init__(self, fold: int, split: Split, predictions: np.ndarray, truth: np.ndarray, trace: List[RmseTraceEntry], best_prefix: Optional[dict], wall_time: float):

        self.fold = fold
        self.train_indices, self.validation_indices, self.test_indices = split
        self.predictions = predictions
        self.truth = truth
        self.trace = trace
        self.best_prefix = best_prefix
        self.wall_time = wall_time

    def get_rmse(self) -> float:

        return rmse(self.predictions, self.truth)

    def to_report(self) -> dict:

        return {
            "fold": self.fold,
            "train_count": int(self.train_indices.size),
            "validation_count": int(self.validation_indices.size),
            "test_count": int(self.test_indices.size),
            "test_rmse": self.get_rmse(),
            "best_prefix": self.best_prefix,
            "wall_time_seconds": self.wall_time,
        }


class ExperimentReport:

    def __init__(self, cfg: ExperimentConfig, folds: List[FoldResult], wall_time: float):

        self._cfg = cfg
        self._folds = folds
        self._wall_time = wall_time

    def get_folds(self) -> List[FoldResult]:

        return self._folds

    def get_mean_rmse(self) -> float:

        return float(np.mean([fold.get_rmse() for fold in self._folds]))

    def to_document(self) -> dict:

        trace = self._folds[0].trace
        final_sweep = None
        if trace:
            sweep, train_rmse, val_rmse = trace[-1]
            final_sweep = {"sweep": sweep, "train_rmse": train_rmse, "val_rmse": val_rmse}

        return {
            "format_version": FORMAT_VERSION,
            "model": self._cfg.model,
            "split": self._cfg.split.mode,
            "folds": [fold.to_report() for fold in self._folds],
            "mean_rmse": self.get_mean_rmse(),
            "final_sweep": final_sweep,
            "wall_time_seconds": self._wall_time,
            "config": self._cfg.echo(),
        }


def make_splits(dataset: ParameterDataset, cfg: ExperimentConfig) -> List[Split]:
    """(train, validation, test) index triples; validation is empty for k-fold runs."""

    split = cfg.split
    split.check_against(dataset.get_N())

    if split.mode == "folds":
        empty = np.array([], dtype=int)
        return [(train_indices, empty, test_indices) for train_indices, test_indices in split_folds(dataset.get_N(), split.folds, split.seed)]

    permutation = RngStream(split.seed).derive("holdout").generator().permutation(dataset.get_N())

    bounds = np.cumsum([split.train, split.validation, split.test])

    return [(
        np.sort(permutation[:bounds[0]]),
        np.sort(permutation[bounds[0]:bounds[1]]),
        np.sort(permutation[bounds[1]:bounds[2]]),
    )]


def check_split_hygiene(dataset: ParameterDataset, split: Split) -> None:

    ids = dataset.get_ids()
    seen = {}

    for name, indices in zip(("train", "validation", "test"), split):
        for index in indices:
            identifier = ids[index]
            if identifier in seen:
                raise RejectedStateError(f"Image '{identifier}' appears in both {seen[identifier]} and {name}")
            seen[identifier] = name


def _versions(dataset: ParameterDataset) -> np.ndarray:
    """n x M x K version parameters."""

    return np.transpose(dataset.get_A_prime(), (1, 2, 0))


def _apply_clip(predictions: np.ndarray, A: np.ndarray, cfg: ExperimentConfig) -> np.ndarray:

    if not cfg.clip_enabled:
        return predictions

    return np.stack([clip(predictions[row], A[:, row], cfg.clip) for row in range(predictions.shape[0])])


def _run_fbptf(train_set: ParameterDataset, validation_set: Optional[ParameterDataset], test_set: ParameterDataset, cfg: ExperimentConfig):

    tensor = train_set.get_delta_tensor()
    dims = ModelDims.bind(tensor.get_values(), train_set.get_F())

    # k-fold runs carry no validation images; the test fold never enters the trace
    validation = None
    if validation_set is not None:
        validation = Validation(validation_set.get_delta_tensor(), validation_set.get_F())

    model = train(tensor, train_set.get_F(), dims, cfg.hyper, cfg.train, validation)

    predictions = predict_batch(model, test_set.get_F(), test_set.get_A())

    best_prefix = None
    if validation_set is not None:
        selection = model.best_prefix()
        if selection is not None:
            sweep, count, validation_rmse = selection
            prefix_predictions = _apply_clip(predict_batch(model.truncated(count), test_set.get_F(), test_set.get_A()), test_set.get_A(), cfg)
            best_prefix = {
                "sweep": sweep,
                "snapshot_count": count,
                "validation_rmse": validation_rmse,
                "test_rmse": rmse(prefix_predictions, _versions(test_set)),
            }

    return predictions, list(model.get_rmse_trace()), best_prefix


def _run_fold_in(dataset: ParameterDataset, split: Split, cfg: ExperimentConfig):

    train_indices, validation_indices, test_indices = split

    # validation rows are folded in after the test rows; only they enter the trace
    order = np.concatenate([test_indices, validation_indices])
    targets = None
    if validation_indices.size:
        targets = np.array(_versions(dataset.subset(order)))
        targets[:test_indices.size] = np.nan

    data = dataset.get_fold_in_tensor(train_indices, order)
    fit = train_fold_in(data, cfg.get_baseline_spec(), hyper_cfg=cfg.hyper, validation_targets=targets)

    best_prefix = None
    if validation_indices.size:
        selection = fit.get_model().best_prefix()
        if selection is not None:
            sweep, count, validation_rmse = selection
            prefix_predictions = fit.truncated(count).predict()[:test_indices.size]
            best_prefix = {
                "sweep": sweep,
                "snapshot_count": count,
                "validation_rmse": validation_rmse,
                "test_rmse": rmse(
                    _apply_clip(prefix_predictions, dataset.get_A()[:, test_indices], cfg),
                    _versions(dataset.subset(test_indices)),
                ),
            }

    return fit.predict()[:test_indices.size], list(fit.get_model().get_rmse_trace()), best_prefix


def run_fold(dataset: ParameterDataset, split: Split, cfg: ExperimentConfig, fold: int) -> FoldResult:

    check_split_hygiene(dataset, split)

    started = time.perf_counter()
    train_indices, validation_indices, test_indices = split

    train_set = dataset.subset(train_indices)
    test_set = dataset.subset(test_indices)
    validation_set = dataset.subset(validation_indices) if validation_indices.size else None

    logger.info("fold {}: {} with {} train, {} validation, {} test images".format(
        fold, cfg.model, train_indices.size, validation_indices.size, test_indices.size
    ))

    trace, best_prefix = [], None

    if cfg.model == "fbptf":
        predictions, trace, best_prefix = _run_fbptf(train_set, validation_set, test_set, cfg)

    elif cfg.model in ("bpmf", "dbptf"):
        predictions, trace, best_prefix = _run_fold_in(dataset, split, cfg)

    elif cfg.model == "mlr":
        fit = mlr_fit(regression_inputs(train_set.get_A(), train_set.get_F()), stack_versions(train_set.get_A_prime()))
        predictions = unstack_versions(
            fit.predict(regression_inputs(test_set.get_A(), test_set.get_F())), dataset.get_M(), dataset.get_K()
        )

    else:
        neighbours = WeightedNeighbours(regression_inputs(train_set.get_A(), train_set.get_F()), _versions(train_set), cfg.get_baseline_spec())
        predictions = neighbours.predict(regression_inputs(test_set.get_A(), test_set.get_F()))

    predictions = _apply_clip(predictions, test_set.get_A(), cfg)

    result = FoldResult(fold, split, predictions, _versions(test_set), trace, best_prefix, time.perf_counter() - started)

    logger.info("fold {}: test RMSE {:.6f}".format(fold, result.get_rmse()))

    return result


def format_predictions(dataset: ParameterDataset, folds: List[FoldResult]) -> str:

    K = dataset.get_K()
    ids = dataset.get_ids()

    header = ["image_id", "version_id", "fold"]
    header += [f"pred_{k + 1}" for k in range(K)] + [f"true_{k + 1}" for k in range(K)]
    lines = [",".join(header)]

    for fold in folds:
        for row, index in enumerate(fold.test_indices):
            for version in range(dataset.get_M()):
                values = list(fold.predictions[row, version]) + list(fold.truth[row, version])
                lines.append(",".join([ids[index], str(version + 1), str(fold.fold)] + ["%.17g" % value for value in values]))

    return "\n".join(lines) + "\n"


def run_experiment(cfg: ExperimentConfig, dataset: Optional[ParameterDataset] = None, output: Optional[str] = None) -> ExperimentReport:
    """Trains and evaluates `cfg.model` on every split and writes the report files.

    Args:
        cfg (ExperimentConfig): Experiment settings.
        dataset (Optional[ParameterDataset]): Preloaded dataset; read from cfg.dataset when omitted.
        output (Optional[str]): Output directory; cfg.output when omitted.
    """

    output = cfg.output if output is None else output

    if dataset is None:
        if not os.path.isdir(cfg.dataset):
            raise ConfigError(f"Dataset directory does not exist: {cfg.dataset}")
        dataset = load_dataset(cfg.dataset)

    started = time.perf_counter()

    folds = []
    for fold, split in enumerate(make_splits(dataset, cfg), start=1):
        try:
            folds.append(run_fold(dataset, split, cfg, fold))

        except FbptfError as error:
            logger.error("{} experiment failed in fold {}: {}".format(cfg.model, fold, error))
            raise

    report = ExperimentReport(cfg, folds, time.perf_counter() - started)
    document = report.to_document()

    # make sure the result will actually be readable
    validate(document, REPORT_SCHEMA)

    os.makedirs(output, exist_ok=True)

    write_text(os.path.join(output, "report.json"), json.dumps(document, indent=2, sort_keys=True) + "\n")
    write_text(os.path.join(output, "predictions.csv"), format_predictions(dataset, folds))

    if folds[0].trace:
        write_text(os.path.join(output, "curves.csv"), format_curves(folds[0].trace))

    logger.info("{}: mean test RMSE {:.6f} over {} fold(s)".format(cfg.model, report.get_mean_rmse(), len(folds)))

    return report


def run_sensitivity(cfg: ExperimentConfig, dataset: Optional[ParameterDataset] = None, output: Optional[str] = None) -> List[Tuple[float, float, float, float]]:
    """Reruns the experiment for every (beta, gamma) pair and writes sensitivity.csv.

    Returns:
        List[Tuple[float, float, float, float]]: (beta, gamma, delta, mean RMSE) rows.
    """

    output = cfg.output if output is None else output

    if dataset is None:
        dataset = load_dataset(cfg.dataset)

    rows = []
    for beta, gamma in SENSITIVITY_GRID:

        l21 = L21Config.from_beta_gamma(
            beta, gamma,
            epsilon=cfg.train.l21.epsilon, max_iter=cfg.train.l21.max_iter,
            tol=cfg.train.l21.tol, intercept=cfg.train.l21.intercept,
        )
        variant = _replace_l21(cfg, l21)

        report = run_experiment(variant, dataset, os.path.join(output, f"beta_{beta!r}_gamma_{gamma!r}"))
        rows.append((beta, gamma, l21.delta, report.get_mean_rmse()))

    lines = ["beta,gamma,delta,mean_rmse"] + [",".join(repr(float(value)) for value in row) for row in rows]
    write_text(os.path.join(output, "sensitivity.csv"), "\n".join(lines) + "\n")

    return rows


def _replace_l21(cfg: ExperimentConfig, l21: L21Config) -> ExperimentConfig:

    return replace(cfg, train=replace(cfg.train, l21=l21))
