import functools
import json
import logging
import os
import sys
from typing import Optional, Tuple

import click
import numpy as np

from fbptf.baselines.spec import BASELINE_KINDS
from fbptf.dataset.parameter_dataset import ParameterDataset
from fbptf.errors import NumericalError, RejectedInputError, RejectedStateError
from fbptf.harness.config import load_experiment_config, resolve_output_path
from fbptf.harness.curves import report_curves
from fbptf.harness.enhancement import METHODS, enhance as enhance_image
from fbptf.harness.experiment import run_experiment, run_sensitivity
from fbptf.imaging.features import extract_features as extract_image_features
from fbptf.imaging.params import measure_params
from fbptf.l21.config import L21Config
from fbptf.l21.problem import L21Problem
from fbptf.l21.solver import solve
from fbptf.model.config import PARAMETER_NAMES, ClipConfig
from fbptf.model.dims import ModelDims
from fbptf.model.gibbs import train as train_chain
from fbptf.model.prediction import clip, predict_batch
from fbptf.numerics.csv_io import format_matrix, read_matrix
from fbptf.numerics.metrics import rmse
from fbptf.persistence.atomic import write_text
from fbptf.persistence.dataset_adapter import DatasetAdapter, load_dataset
from fbptf.persistence.image_adapter import ImageAdapter
from fbptf.persistence.model_adapter import load_model, save_model
from fbptf.synthetic.config import SyntheticConfig
from fbptf.synthetic.generator import generate


EXIT_INVALID = 1
EXIT_NUMERICAL = 2


def handle_errors(command):

    @functools.wraps(command)
    def wrapper(*args, **kwargs):

        try:
            return command(*args, **kwargs)

        except (RejectedInputError, RejectedStateError) as error:
            click.echo(f"Error: {error}", err=True)
            sys.exit(EXIT_INVALID)

        except NumericalError as error:
            click.echo(f"Numerical failure: {error}", err=True)
            sys.exit(EXIT_NUMERICAL)

    return wrapper


def output_path(path: str) -> str:

    return resolve_output_path(path, click.get_current_context().obj.get("output_root"))


def format_rows(names, rows) -> str:

    lines = [",".join(names)]
    lines.extend(",".join(str(cell) if isinstance(cell, str) else "%.17g" % cell for cell in row) for row in rows)

    return "\n".join(lines) + "\n"


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output.")
@click.option("--output-root", envvar="FBPTF_OUTPUT_ROOT", type=click.Path(file_okay=False), help="Root of relative output paths.")
@click.pass_context
def app(ctx, verbose: int, output_root: Optional[str]):

    level = logging.WARNING if verbose == 0 else logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    ctx.ensure_object(dict)
    ctx.obj["output_root"] = output_root


@app.command("generate-synthetic")
@click.argument("output", type=click.Path(exists=False))
@click.option("--n", "n", type=click.INT, default=1000, show_default=True)
@click.option("--l", "l", type=click.INT, default=50, show_default=True)
@click.option("--m", "m", type=click.INT, default=4, show_default=True)
@click.option("--eta", type=click.FLOAT, default=0.5, show_default=True)
@click.option("--norm-scale", type=click.FLOAT, default=None, help="Factor of ||F_i||; 1/sqrt(l) by default.")
@click.option("--seed", type=click.INT, default=0, show_default=True)
@click.option("--force", is_flag=True, help="Replace an existing directory.")
@handle_errors
def generate_synthetic(output: str, n: int, l: int, m: int, eta: float, norm_scale: Optional[float], seed: int, force: bool):

    config = SyntheticConfig(n=n, l=l, m=m, eta=eta, norm_scale=norm_scale, seed=seed)
    dataset = ParameterDataset.from_synthetic(generate(config))

    path = output_path(output)
    DatasetAdapter().write(dataset, path, override_if_existing=force)

    click.echo(f"Wrote {dataset.get_N()} images (K={dataset.get_K()}, L={dataset.get_L()}, M={dataset.get_M()}) to {path}")


@app.command()
@click.argument("dataset", type=click.Path(exists=True, file_okay=False))
@click.argument("model_dir", type=click.Path(exists=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="Experiment configuration file.")
@click.option("--set", "overrides", multiple=True, help="key=value override, repeatable.")
@click.option("--force", is_flag=True, help="Replace an existing model directory.")
@handle_errors
def train(dataset: str, model_dir: str, config_path: Optional[str], overrides: Tuple[str, ...], force: bool):
    """Trains FBPTF on every image of DATASET."""

    cfg = load_experiment_config(config_path, overrides + (f"dataset={dataset}",))
    data = load_dataset(dataset)

    tensor = data.get_delta_tensor()
    dims = ModelDims.bind(tensor.get_values(), data.get_F())

    model = train_chain(tensor, data.get_F(), dims, cfg.hyper, cfg.train)

    path = output_path(model_dir)
    save_model(model, path, override_if_existing=force)

    sweep, train_rmse, _ = model.get_rmse_trace()[-1]
    click.echo(f"Trained {dims} for {model.get_sweeps()} sweeps; {model.get_snapshot_count()} snapshots; train RMSE {train_rmse:.6f} at sweep {sweep}")


@app.command()
@click.argument("model_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("dataset", type=click.Path(exists=True, file_okay=False))
@click.argument("output", type=click.Path(exists=False))
@click.option("--clip/--no-clip", "clipping", default=False, show_default=True, help="Apply the default clipping envelope.")
@handle_errors
def predict(model_dir: str, dataset: str, output: str, clipping: bool):
    """Predicts the version parameters of every image of DATASET."""

    model = load_model(model_dir)
    data = load_dataset(dataset)

    predictions = predict_batch(model, data.get_F(), data.get_A())

    if clipping:
        cfg = ClipConfig()
        predictions = np.stack([clip(predictions[row], data.get_A()[:, row], cfg) for row in range(data.get_N())])

    rows = [
        [identifier, str(version + 1)] + list(predictions[row, version])
        for row, identifier in enumerate(data.get_ids())
        for version in range(data.get_M())
    ]

    path = output_path(output)
    write_text(path, format_rows(["image_id", "version_id"] + [f"pred_{k + 1}" for k in range(data.get_K())], rows))

    truth = np.transpose(data.get_A_prime(), (1, 2, 0))
    click.echo(f"Wrote {len(rows)} predictions to {path}; RMSE {rmse(predictions, truth):.6f}")


@app.command()
@click.argument("image", type=click.Path(exists=True, dir_okay=False))
@click.argument("output", type=click.Path(exists=False))
@click.option("--model", "model_dir", type=click.Path(exists=True, file_okay=False), help="Trained model directory.")
@click.option("--method", type=click.Choice(METHODS), default="fbptf", show_default=True)
@click.option("--dataset", type=click.Path(exists=True, file_okay=False), help="Training dataset of --method transfer.")
@click.option("--clip/--no-clip", "clipping", default=True, show_default=True)
@click.option("--tol", type=click.FLOAT, default=0.01, show_default=True)
@click.option("--max-iter", type=click.INT, default=40, show_default=True)
@handle_errors
def enhance(image: str, output: str, model_dir: Optional[str], method: str, dataset: Optional[str], clipping: bool, tol: float, max_iter: int):
    """Writes M enhanced versions of IMAGE and their parameter table."""

    result = enhance_image(
        image, model_dir, output_path(output), ClipConfig() if clipping else None,
        method=method, dataset=dataset, tol=tol, max_iter=max_iter,
    )

    for path in result.get_paths():
        click.echo(path)


@app.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="Experiment configuration file.")
@click.option("--set", "overrides", multiple=True, help="key=value override, repeatable.")
@click.option("--sweep-table", is_flag=True, help="Repeat the run over the (beta, gamma) sensitivity grid.")
@handle_errors
def evaluate(config_path: Optional[str], overrides: Tuple[str, ...], sweep_table: bool):
    """Runs a configured experiment and writes report.json, curves.csv and predictions.csv."""

    cfg = load_experiment_config(config_path, overrides)
    output = output_path(cfg.output)

    if sweep_table:
        for beta, gamma, delta, mean_rmse in run_sensitivity(cfg, output=output):
            click.echo(f"beta={beta!r} gamma={gamma!r} delta={delta!r}: mean RMSE {mean_rmse:.6f}")
        return

    report = run_experiment(cfg, output=output)

    for fold in report.get_folds():
        click.echo(f"fold {fold.fold}: RMSE {fold.get_rmse():.6f}")
    click.echo(f"{cfg.model}: mean RMSE {report.get_mean_rmse():.6f}")


@app.group()
def baseline():
    pass


@baseline.command("run")
@click.argument("dataset", type=click.Path(exists=True, file_okay=False))
@click.option("--kind", type=click.Choice(BASELINE_KINDS), required=True)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="Experiment configuration file.")
@click.option("--set", "overrides", multiple=True, help="key=value override, repeatable.")
@handle_errors
def baseline_run(dataset: str, kind: str, config_path: Optional[str], overrides: Tuple[str, ...]):
    """Evaluates a reference competitor on DATASET."""

    cfg = load_experiment_config(config_path, overrides + (f"dataset={dataset}", f"model={kind}"))
    report = run_experiment(cfg, output=output_path(cfg.output))

    click.echo(f"{kind}: mean RMSE {report.get_mean_rmse():.6f} over {len(report.get_folds())} fold(s)")


@app.command("extract-features")
@click.argument("images", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--output", type=click.Path(exists=False), help="CSV file; standard output when omitted.")
@handle_errors
def extract_features(images: Tuple[str, ...], output: Optional[str]):
    """One CSV row per image: file name, then the feature vector."""

    adapter = ImageAdapter()

    lines = []
    for path in images:
        features = extract_image_features(adapter.read(path))
        lines.append(os.path.basename(path) + "," + format_matrix(features[np.newaxis, :]).strip())

    if output is None:
        for line in lines:
            click.echo(line)
    else:
        write_text(output_path(output), "\n".join(lines) + "\n")


@app.command()
@click.argument("images", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@handle_errors
def measure(images: Tuple[str, ...]):
    """Prints saturation, brightness and contrast per image."""

    adapter = ImageAdapter()

    rows = [[os.path.basename(path)] + list(measure_params(adapter.read(path)).as_array()) for path in images]

    click.echo(format_rows(("file",) + PARAMETER_NAMES, rows), nl=False)


@app.command("report-curves")
@click.argument("model_dir", type=click.Path(exists=True, file_okay=False))
@click.argument("output", type=click.Path(exists=False))
@handle_errors
def report_curves_command(model_dir: str, output: str):
    """Writes the RMSE trace of a trained model as CSV."""

    click.echo(report_curves(load_model(model_dir), output_path(output)))


@app.group()
def l21():
    pass


@l21.command("solve")
@click.argument("z_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("b_path", type=click.Path(exists=True, dir_okay=False))
@click.argument("output", type=click.Path(exists=False))
@click.option("--epsilon", type=click.FLOAT, default=1e-10, show_default=True)
@click.option("--max-iter", type=click.INT, default=200, show_default=True)
@click.option("--tol", type=click.FLOAT, default=1e-8, show_default=True)
@handle_errors
def l21_solve(z_path: str, b_path: str, output: str, epsilon: float, max_iter: int, tol: float):
    """Solves min ||X||_21 s.t. ZX = B; writes X.csv and trace.jsonl."""

    config = L21Config(epsilon=epsilon, max_iter=max_iter, tol=tol)
    solution = solve(L21Problem(read_matrix(z_path), read_matrix(b_path)), config)

    path = output_path(output)
    os.makedirs(path, exist_ok=True)

    write_text(os.path.join(path, "X.csv"), format_matrix(solution.get_X()))
    write_text(os.path.join(path, "trace.jsonl"), "".join(
        json.dumps({"iter": iteration, "objective": objective, "residual": residual}) + "\n"
        for iteration, (objective, residual) in enumerate(zip(solution.get_objective_trace(), solution.get_residual_trace()))
    ))

    click.echo(f"objective {solution.get_objective():.10g} after {solution.get_iteration_count()} iterations; residual {solution.get_feasibility_residual():.3g}")


if __name__ == "__main__":
    app()
