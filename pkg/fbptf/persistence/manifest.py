"""key = value manifests validated against the JSON schemas shipped with the package."""

import json
import os
import re
from typing import Dict, Optional, Union

import jsonschema

from fbptf.errors import SchemaError


Value = Union[bool, int, float, str]

_INTEGER = re.compile(r"^[+-]?\d+$")

_schemas: Dict[str, dict] = {}


def get_schema(name: str) -> dict:

    if name not in _schemas:
        with open(os.path.join(os.path.dirname(__file__), "schemas", name), "r") as file_handle:
            _schemas[name] = json.load(file_handle)

    return _schemas[name]


def validate(document: dict, schema_name: str, path: Optional[str] = None) -> None:

    try:
        jsonschema.validate(document, get_schema(schema_name))

    except jsonschema.ValidationError as error:
        location = "/".join(str(part) for part in error.absolute_path)
        raise SchemaError(f"{location or 'document'}: {error.message}", path=path)


def coerce(text: str) -> Value:
    """Typed value of a manifest field: bool, int, float or the string itself."""

    if text in ("true", "false"):
        return text == "true"

    if _INTEGER.match(text):
        return int(text)

    try:
        return float(text)

    except ValueError:
        return text


def format_value(value: Value) -> str:

    if isinstance(value, bool):
        return "true" if value else "false"

    if isinstance(value, float):
        return repr(value)

    return str(value)


def parse_manifest(text: str, path: Optional[str] = None) -> Dict[str, Value]:

    manifest = {}

    for line_number, line in enumerate(text.splitlines(), start=1):

        line = line.split("#", 1)[0].strip()
        if not line:
            continue

        if "=" not in line:
            raise SchemaError("Expecting a 'key = value' line", path=path, line=line_number)

        key, value = (part.strip() for part in line.split("=", 1))

        if not key:
            raise SchemaError("Empty key", path=path, line=line_number, column=1)

        if key in manifest:
            raise SchemaError(f"Duplicate key '{key}'", path=path, line=line_number, column=1)

        manifest[key] = coerce(value)

    return manifest


def format_manifest(manifest: Dict[str, Value]) -> str:

    return "".join(f"{key} = {format_value(value)}\n" for key, value in manifest.items())


def read_manifest(path: str, schema_name: str) -> Dict[str, Value]:

    if not os.path.isfile(path):
        raise SchemaError("Missing manifest", path=path)

    with open(path, "r") as file_handle:
        manifest = parse_manifest(file_handle.read(), path)

    validate(manifest, schema_name, path)

    return manifest
