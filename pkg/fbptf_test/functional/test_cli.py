import json
import os

import numpy as np
from click.testing import CliRunner

from app import app
from fbptf.numerics.csv_io import read_matrix, write_matrix
from fbptf.persistence import ImageAdapter, load_dataset, load_model
from fbptf_test.functional.image_generation import generate_image


SHORT_CHAIN = ["--set", "train.sweeps=3", "--set", "train.burn_in=1", "--set", "l21.max_iter=10"]


def _invoke(*args):

    return CliRunner().invoke(app, [str(arg) for arg in args], catch_exceptions=False)


def _generate(tmp_path, name="dataset", n=12, l=4, m=2) -> str:

    path = str(tmp_path / name)
    result = _invoke("generate-synthetic", path, "--n", n, "--l", l, "--m", m, "--seed", 5)

    assert result.exit_code == 0, result.output

    return path


def test_generate_synthetic(tmp_path):

    path = _generate(tmp_path)

    dataset = load_dataset(path)

    assert (dataset.get_N(), dataset.get_K(), dataset.get_L(), dataset.get_M()) == (12, 3, 4, 2)
    assert dataset.get_provenance()["synthetic.seed"] == 5

    assert _invoke("generate-synthetic", path, "--n", 12).exit_code == 1
    assert _invoke("generate-synthetic", path, "--n", 12, "--force").exit_code == 0


def test_train_predict_and_curves(tmp_path):

    dataset = _generate(tmp_path)
    model_dir = str(tmp_path / "model")

    result = _invoke("train", dataset, model_dir, *SHORT_CHAIN)
    assert result.exit_code == 0, result.output
    assert load_model(model_dir).get_snapshot_count() == 2

    predictions = str(tmp_path / "predictions.csv")
    result = _invoke("predict", model_dir, dataset, predictions, "--clip")
    assert result.exit_code == 0, result.output

    with open(predictions, "r") as file_handle:
        lines = file_handle.read().splitlines()

    assert lines[0] == "image_id,version_id,pred_1,pred_2,pred_3"
    assert len(lines) == 1 + 12 * 2

    curves = str(tmp_path / "curves.csv")
    assert _invoke("report-curves", model_dir, curves).exit_code == 0
    assert os.path.isfile(curves)


def test_uncoupled_fbptf_is_rejected(tmp_path):

    dataset = _generate(tmp_path)

    result = _invoke("train", dataset, str(tmp_path / "model"), "--set", "train.feature_coupling=false")

    assert result.exit_code == 1
    assert "dbptf" in result.output


def test_evaluate_and_baseline(tmp_path):

    dataset = _generate(tmp_path)
    config = tmp_path / "experiment.cfg"
    config.write_text("dataset = {}\noutput = {}\nmodel = mlr\n".format(dataset, tmp_path / "mlr"))

    result = _invoke("evaluate", "--config", config)
    assert result.exit_code == 0, result.output
    assert "mlr: mean RMSE" in result.output

    with open(os.path.join(str(tmp_path / "mlr"), "report.json"), "r") as file_handle:
        assert len(json.load(file_handle)["folds"]) == 3

    result = _invoke("baseline", "run", dataset, "--kind", "wknn", "--set", "baseline.k=2", "--set", "output={}".format(tmp_path / "wknn"))
    assert result.exit_code == 0, result.output
    assert os.path.isfile(os.path.join(str(tmp_path / "wknn"), "predictions.csv"))


def test_evaluate_reports_missing_dataset(tmp_path):

    result = _invoke("evaluate", "--set", "dataset={}".format(tmp_path / "absent"), "--set", "output={}".format(tmp_path / "out"))

    assert result.exit_code == 1
    assert "Dataset directory does not exist" in result.output


def test_images(tmp_path):

    first, second = str(tmp_path / "a.png"), str(tmp_path / "b.ppm")
    ImageAdapter().write(generate_image(seed=0), first)
    ImageAdapter().write(generate_image(seed=1), second)

    result = _invoke("measure", first, second)
    assert result.exit_code == 0, result.output
    assert result.output.splitlines()[0] == "file,saturation,brightness,contrast"
    assert result.output.splitlines()[2].startswith("b.ppm,")

    features = str(tmp_path / "features.csv")
    result = _invoke("extract-features", first, second, "--output", features)
    assert result.exit_code == 0, result.output

    with open(features, "r") as file_handle:
        rows = [line.split(",") for line in file_handle.read().splitlines()]

    assert [row[0] for row in rows] == ["a.png", "b.ppm"]
    assert all(len(row) == 1 + 1709 for row in rows)


def test_enhance_by_transfer(tmp_path):

    dataset = _generate(tmp_path, n=6, l=1709)
    image = str(tmp_path / "photo.png")
    ImageAdapter().write(generate_image(), image)

    result = _invoke("enhance", image, tmp_path / "enhanced", "--method", "transfer", "--dataset", dataset)

    assert result.exit_code == 0, result.output
    assert result.output.splitlines() == [
        os.path.join(str(tmp_path / "enhanced"), "version_1.png"),
        os.path.join(str(tmp_path / "enhanced"), "version_2.png"),
    ]


def test_l21_solve(tmp_path):

    write_matrix(np.array([[1.0, 2.0]]), str(tmp_path / "Z.csv"))
    write_matrix(np.array([[2.0]]), str(tmp_path / "B.csv"))

    result = _invoke("l21", "solve", tmp_path / "Z.csv", tmp_path / "B.csv", tmp_path / "solution")

    assert result.exit_code == 0, result.output
    assert np.allclose(read_matrix(str(tmp_path / "solution" / "X.csv"))[:, 0], [0.0, 1.0], atol=1e-6)

    with open(str(tmp_path / "solution" / "trace.jsonl"), "r") as file_handle:
        entries = [json.loads(line) for line in file_handle]

    assert set(entries[0]) == {"iter", "objective", "residual"}
    assert [entry["iter"] for entry in entries] == list(range(len(entries)))
    assert entries[0]["objective"] > 1.0
    assert all(entry["residual"] < 1e-8 for entry in entries)
