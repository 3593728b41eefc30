"""Experiment configuration files.

Line-based `key = value` with dotted section prefixes and `#` comments:

    dataset = data/synthetic
    model = fbptf
    train.sweeps = 50
    l21.beta = 0.1
    split.mode = folds

`--set key=value` overrides are applied after the file.
"""

import os
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, Optional, Tuple

from fbptf.baselines.spec import BASELINE_KINDS, BaselineSpec
from fbptf.errors import ConfigError, RejectedInputError
from fbptf.l21.config import L21Config
from fbptf.model.config import ClipConfig, HyperPriorConfig, TrainConfig


MODEL_KINDS = ("fbptf",) + BASELINE_KINDS
SPLIT_MODES = ("folds", "holdout")


@dataclass(frozen=True)
class SplitSpec:
    """k-fold cross-validation, or a seeded train/validation/test holdout."""

    mode: str = "folds"
    folds: int = 3
    seed: int = 0
    train: int = 60
    validation: int = 20
    test: int = 20

    def __post_init__(self):

        if self.mode not in SPLIT_MODES:
            raise RejectedInputError(f"split.mode must be one of {', '.join(SPLIT_MODES)}, given '{self.mode}'")

        if self.folds < 2:
            raise RejectedInputError(f"split.folds must be at least 2, given {self.folds}")

        if self.train < 1 or self.test < 1 or self.validation < 0:
            raise RejectedInputError("Holdout needs at least one train and one test image")

    def check_against(self, count: int) -> None:

        if self.mode == "folds" and self.folds > count:
            raise ConfigError(f"Cannot split {count} images into {self.folds} folds")

        if self.mode == "holdout" and self.train + self.validation + self.test > count:
            raise ConfigError(
                f"Holdout of {self.train}/{self.validation}/{self.test} images exceeds the {count} available"
            )


@dataclass(frozen=True)
class ExperimentConfig:

    dataset: str
    output: str = "experiment"
    model: str = "fbptf"
    hyper: HyperPriorConfig = field(default_factory=HyperPriorConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    clip: ClipConfig = field(default_factory=ClipConfig)
    clip_enabled: bool = False
    latent_dim: int = 10
    k: int = 5
    distance_epsilon: float = 1e-8
    split: SplitSpec = field(default_factory=SplitSpec)

    def __post_init__(self):

        if self.model not in MODEL_KINDS:
            raise ConfigError(f"model must be one of {', '.join(MODEL_KINDS)}, given '{self.model}'")

        if self.model == "fbptf" and not self.train.feature_coupling:
            raise ConfigError("model = fbptf needs train.feature_coupling; use model = dbptf for the uncoupled chain")

    def get_baseline_spec(self) -> BaselineSpec:

        return BaselineSpec(
            kind=self.model,
            latent_dim=self.latent_dim,
            sweeps=self.train.sweeps,
            burn_in=self.train.burn_in,
            k=self.k,
            distance_epsilon=self.distance_epsilon,
            seed=self.train.seed,
        )

    def echo(self) -> Dict[str, Any]:
        """Effective value of every configuration key."""

        return {key: _render(_lookup(self, key)) for key in sorted(KEYS)}


def _parse_bool(text: str) -> bool:

    lowered = text.strip().lower()

    if lowered in ("true", "yes", "1"):
        return True

    if lowered in ("false", "no", "0"):
        return False

    raise ValueError(f"not a boolean: '{text}'")


def _parse_optional_int(text: str) -> Optional[int]:

    return None if text.strip().lower() in ("", "none", "auto") else int(text)


def _parse_floats(text: str) -> Tuple[float, ...]:

    return tuple(float(part) for part in text.split(","))


def _parse_str(text: str) -> str:

    return text.strip()


KEYS: Dict[str, Callable[[str], Any]] = {
    "dataset": _parse_str,
    "output": _parse_str,
    "model": _parse_str,
    "train.sweeps": int,
    "train.burn_in": _parse_optional_int,
    "train.seed": int,
    "train.feature_coupling": _parse_bool,
    "train.track_rmse_every": int,
    "train.thin": int,
    "train.workers": int,
    "l21.beta": float,
    "l21.delta": float,
    "l21.epsilon": float,
    "l21.max_iter": int,
    "l21.tol": float,
    "l21.intercept": _parse_bool,
    "prior.alpha_scale": float,
    "prior.alpha_dof": float,
    "prior.sigma2_init": float,
    "prior.alpha_init": float,
    "clip.enabled": _parse_bool,
    "clip.upward": _parse_floats,
    "clip.downward": _parse_floats,
    "baseline.latent_dim": int,
    "baseline.k": int,
    "baseline.distance_epsilon": float,
    "split.mode": _parse_str,
    "split.folds": int,
    "split.seed": int,
    "split.train": int,
    "split.validation": int,
    "split.test": int,
}

# section -> attribute path inside ExperimentConfig
_SECTIONS = {
    "train": "train",
    "l21": "train.l21",
    "prior": "hyper",
    "clip": "clip",
    "split": "split",
}

_TOP_LEVEL = {
    "clip.enabled": "clip_enabled",
    "baseline.latent_dim": "latent_dim",
    "baseline.k": "k",
    "baseline.distance_epsilon": "distance_epsilon",
}


def _lookup(cfg: ExperimentConfig, key: str) -> Any:

    if key in _TOP_LEVEL:
        return getattr(cfg, _TOP_LEVEL[key])

    section, _, name = key.rpartition(".")

    target = cfg
    for attribute in _SECTIONS[section].split(".") if section else ():
        target = getattr(target, attribute)

    return getattr(target, name)


def _render(value: Any) -> Any:

    if isinstance(value, tuple):
        return ",".join(repr(float(item)) for item in value)

    return value


def parse_value(key: str, text: str, *, path: Optional[str] = None, line: Optional[int] = None) -> Any:

    location = ":".join(str(part) for part in (path, line) if part is not None)
    prefix = f"{location}: " if location else ""

    if key not in KEYS:
        raise ConfigError(f"{prefix}Unknown configuration key '{key}'")

    try:
        return KEYS[key](text)

    except ValueError as error:
        raise ConfigError(f"{prefix}Invalid value for '{key}': {error}")


def parse_config_text(text: str, path: Optional[str] = None) -> Dict[str, Any]:

    settings = {}

    for line_number, line in enumerate(text.splitlines(), start=1):

        line = line.split("#", 1)[0].strip()
        if not line:
            continue

        if "=" not in line:
            raise ConfigError(f"{path or '<config>'}:{line_number}: Expecting a 'key = value' line")

        key, value = (part.strip() for part in line.split("=", 1))
        settings[key] = parse_value(key, value, path=path or "<config>", line=line_number)

    return settings


def parse_overrides(overrides: Iterable[str]) -> Dict[str, Any]:

    settings = {}

    for override in overrides:

        if "=" not in override:
            raise ConfigError(f"Override must read key=value, given '{override}'")

        key, value = (part.strip() for part in override.split("=", 1))
        settings[key] = parse_value(key, value)

    return settings


def build_config(settings: Dict[str, Any]) -> ExperimentConfig:

    if "dataset" not in settings:
        raise ConfigError("The configuration names no dataset")

    sections = defaultdict(dict)
    top_level = {}

    for key, value in settings.items():

        if key in _TOP_LEVEL:
            top_level[_TOP_LEVEL[key]] = value
            continue

        section, _, name = key.rpartition(".")

        if section:
            sections[section][name] = value
        else:
            top_level[name] = value

    try:
        return ExperimentConfig(
            hyper=HyperPriorConfig(**sections["prior"]),
            train=TrainConfig(l21=L21Config(**sections["l21"]), **sections["train"]),
            clip=ClipConfig(**sections["clip"]),
            split=SplitSpec(**sections["split"]),
            **top_level,
        )

    except ConfigError:
        raise

    except RejectedInputError as error:
        raise ConfigError(str(error))


def load_experiment_config(path: Optional[str] = None, overrides: Iterable[str] = ()) -> ExperimentConfig:

    settings = {}

    if path is not None:

        if not os.path.isfile(path):
            raise ConfigError(f"Missing configuration file: {path}")

        with open(path, "r") as file_handle:
            settings.update(parse_config_text(file_handle.read(), path))

    settings.update(parse_overrides(overrides))

    return build_config(settings)


def resolve_output_path(path: str, root: Optional[str] = None) -> str:
    """Relative output paths are placed under `root` when one is given."""

    if root and not os.path.isabs(path):
        return os.path.join(root, path)

    return path
