"""Predicts, clips and applies M parameter sets to one photo."""

import logging
import os
from typing import List, Optional, Union

import numpy as np

from fbptf.baselines.transfer import transfer_predict
from fbptf.dataset.parameter_dataset import ParameterDataset
from fbptf.errors import RejectedInputError
from fbptf.imaging.adjustment import AdjustmentResult, apply_params
from fbptf.imaging.features import FeatureConfig, extract_features
from fbptf.imaging.params import ImageParams, measure_params
from fbptf.model.config import PARAMETER_NAMES, ClipConfig
from fbptf.model.prediction import clip, predict
from fbptf.model.trained_model import TrainedModel
from fbptf.persistence.atomic import write_text
from fbptf.persistence.dataset_adapter import load_dataset
from fbptf.persistence.image_adapter import ImageAdapter
from fbptf.persistence.model_adapter import load_model


logger = logging.getLogger(__name__)

METHODS = ("fbptf", "transfer")


class EnhancementResult:
    """Per-version parameter table: predicted, clipped and achieved, plus the written paths."""

    def __init__(self, source: ImageParams, predicted: np.ndarray, clipped: np.ndarray, adjustments: List[AdjustmentResult], paths: List[str]):

        self._source = source
        self._predicted = predicted
        self._clipped = clipped
        self._adjustments = adjustments
        self._paths = paths

    def get_source(self) -> ImageParams:

        return self._source

    def get_predicted(self) -> np.ndarray:

        return self._predicted

    def get_clipped(self) -> np.ndarray:

        return self._clipped

    def get_achieved(self) -> np.ndarray:

        return np.stack([adjustment.get_achieved().as_array() for adjustment in self._adjustments])

    def get_adjustments(self) -> List[AdjustmentResult]:

        return list(self._adjustments)

    def get_paths(self) -> List[str]:

        return list(self._paths)

    def format_table(self) -> str:

        header = ["version"]
        for stage in ("predicted", "clipped", "achieved"):
            header += [f"{stage}_{name}" for name in PARAMETER_NAMES]
        header.append("converged")

        lines = [",".join(header)]
        achieved = self.get_achieved()

        for version in range(self._predicted.shape[0]):
            values = list(self._predicted[version]) + list(self._clipped[version]) + list(achieved[version])
            converged = "true" if self._adjustments[version].is_converged() else "false"
            lines.append(",".join([str(version + 1)] + ["%.17g" % value for value in values] + [converged]))

        return "\n".join(lines) + "\n"


def enhance(
    image_path: str,
    model: Optional[Union[str, TrainedModel]],
    output: str,
    clip_cfg: Optional[ClipConfig] = ClipConfig(),
    *,
    method: str = "fbptf",
    dataset: Optional[Union[str, ParameterDataset]] = None,
    feature_cfg: FeatureConfig = FeatureConfig(),
    tol: float = 0.01,
    max_iter: int = 40,
) -> EnhancementResult:
    """Writes version_1.png ... version_M.png and parameters.csv into `output`.

    Args:
        image_path (str): Input photo (PNG or PPM).
        model (Optional[Union[str, TrainedModel]]): Trained model or its directory; used by method fbptf.
        output (str): Output directory.
        clip_cfg (Optional[ClipConfig]): Clipping envelope; None applies raw predictions.
        method (str): fbptf, or transfer for the nearest-neighbour parameter transfer.
        dataset (Optional[Union[str, ParameterDataset]]): Training data of method transfer.
        feature_cfg (FeatureConfig): Feature extractor; its length must equal the model's D.
        tol (float): Adjustment tolerance per axis.
        max_iter (int): Adjustment iteration cap.
    """

    if method not in METHODS:
        raise RejectedInputError(f"Unknown enhancement method '{method}', expecting one of {', '.join(METHODS)}")

    adapter = ImageAdapter()
    image = adapter.read(image_path)

    source = measure_params(image)
    A = source.as_array()
    F = extract_features(image, feature_cfg)

    if method == "fbptf":

        if model is None:
            raise RejectedInputError("Method fbptf needs a trained model")

        model = load_model(model) if isinstance(model, str) else model
        dims = model.get_dims()

        if dims.D != F.size:
            raise RejectedInputError(f"Model latent dimension D = {dims.D} does not match the feature length {F.size}")

        if dims.K != A.size:
            raise RejectedInputError(f"Model predicts K = {dims.K} parameters, images have {A.size}")

        predicted = predict(model, F, A)

    else:

        if dataset is None:
            raise RejectedInputError("Method transfer needs a training dataset")

        dataset = load_dataset(dataset) if isinstance(dataset, str) else dataset

        if dataset.get_L() != F.size:
            raise RejectedInputError(f"Dataset feature length {dataset.get_L()} does not match the extracted {F.size}")

        predicted = transfer_predict(A, F, dataset.get_A(), dataset.get_F(), dataset.get_A_prime())

    clipped = predicted if clip_cfg is None else clip(predicted, A, clip_cfg)

    os.makedirs(output, exist_ok=True)

    adjustments, paths = [], []
    for version, parameters in enumerate(clipped, start=1):

        target = ImageParams.from_array(np.clip(parameters, 0.0, 1.0))
        adjustment = apply_params(image, target, tol, max_iter)

        path = os.path.join(output, f"version_{version}.png")
        adapter.write(adjustment.get_image(), path, override_if_existing=True)

        logger.info("version {}: target {} achieved {}".format(version, target, adjustment.get_achieved()))

        adjustments.append(adjustment)
        paths.append(path)

    result = EnhancementResult(source, predicted, clipped, adjustments, paths)
    write_text(os.path.join(output, "parameters.csv"), result.format_table())

    return result
