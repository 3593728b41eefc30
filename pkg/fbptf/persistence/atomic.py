"""Write-to-temporary-then-rename helpers."""

import os
import shutil
from contextlib import contextmanager

from fbptf.errors import RejectedInputError


def _remove(path: str) -> None:

    if os.path.isdir(path):
        shutil.rmtree(path)
    elif os.path.exists(path):
        os.remove(path)


@contextmanager
def atomic_path(path: str, *, override_if_existing: bool = False, directory: bool = False):
    """Yields a temporary sibling of `path` and swaps it into place on success."""

    if os.path.exists(path) and not override_if_existing:
        raise RejectedInputError(f"Path does already exist: {path}")

    temporary_path = f"{path}.tmp"
    _remove(temporary_path)

    if directory:
        os.makedirs(temporary_path)

    try:
        yield temporary_path

    except BaseException:
        _remove(temporary_path)
        raise

    # swap written asset into target path
    _remove(path)
    os.rename(temporary_path, path)


def write_text(path: str, content: str, *, override_if_existing: bool = True) -> None:

    with atomic_path(path, override_if_existing=override_if_existing) as temporary_path:
        with open(temporary_path, "w") as file_handle:
            file_handle.write(content)
