"""CSV rendering of RMSE traces: header sweep,train_rmse,val_rmse."""

import os
from typing import Iterable, List

from fbptf.errors import SchemaError
from fbptf.model.trained_model import RmseTraceEntry


HEADER = "sweep,train_rmse,val_rmse"


def _number(value) -> str:

    return "" if value is None else repr(float(value))


def format_curves(trace: Iterable[RmseTraceEntry]) -> str:

    lines = [HEADER]
    lines.extend(f"{sweep},{_number(train)},{_number(validation)}" for sweep, train, validation in trace)

    return "\n".join(lines) + "\n"


def parse_curves(path: str) -> List[RmseTraceEntry]:

    if not os.path.isfile(path):
        raise SchemaError("Missing trace file", path=path)

    trace = []

    with open(path, "r") as file_handle:

        lines = file_handle.read().splitlines()

    if not lines or lines[0].strip() != HEADER:
        raise SchemaError(f"Expecting header '{HEADER}'", path=path, line=1)

    for line_number, line in enumerate(lines[1:], start=2):

        if not line.strip():
            continue

        cells = line.split(",")

        if len(cells) != 3:
            raise SchemaError(f"Expected 3 columns, found {len(cells)}", path=path, line=line_number)

        try:
            trace.append((int(cells[0]), float(cells[1]), float(cells[2]) if cells[2] else None))

        except ValueError as error:
            raise SchemaError(str(error), path=path, line=line_number)

    return trace
