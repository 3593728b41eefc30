
import logging
import os

import numpy as np
from PIL import Image

from fbptf.errors import RejectedInputError, SchemaError
from fbptf.imaging.image import ImageRGB
from fbptf.persistence.atomic import atomic_path
from fbptf.persistence.interface import IAdapter


FORMATS = {
    ".png": "PNG",
    ".ppm": "PPM",
}


class ImageAdapter(IAdapter):
    """PNG and binary PPM images through Pillow."""

    def __init__(self):

        self._logger = logging.getLogger(__name__)

    def read(self, path: str) -> ImageRGB:

        self._logger.debug("Reading image from: {}".format(path))

        if not os.path.isfile(path):
            raise SchemaError("Missing image file", path=path)

        try:
            with Image.open(path) as handle:
                pixels = np.asarray(handle.convert("RGB"), dtype=np.uint8)

        except OSError as error:
            raise SchemaError(f"Unreadable image: {error}", path=path)

        return ImageRGB(pixels)

    def write(self, image: ImageRGB, path: str, *, override_if_existing: bool = False) -> None:

        self._logger.debug("Writing {} x {} image to: {}".format(image.get_width(), image.get_height(), path))

        extension = os.path.splitext(path)[1].lower()

        if extension not in FORMATS:
            raise RejectedInputError(f"Unsupported image format '{extension}', expecting one of {', '.join(FORMATS)}")

        with atomic_path(path, override_if_existing=override_if_existing) as temporary_path:
            Image.fromarray(np.ascontiguousarray(image.get_pixels()), "RGB").save(temporary_path, format=FORMATS[extension])
