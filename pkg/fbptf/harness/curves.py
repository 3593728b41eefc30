
from fbptf.errors import RejectedStateError
from fbptf.model.trained_model import TrainedModel
from fbptf.persistence.atomic import write_text
from fbptf.persistence.curves import format_curves


def report_curves(model: TrainedModel, path: str) -> str:
    """Writes the RMSE trace of `model` as CSV and returns the path."""

    if not model.get_rmse_trace():
        raise RejectedStateError("Model carries no RMSE trace")

    write_text(path, format_curves(model.get_rmse_trace()))

    return path
