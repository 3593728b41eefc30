
import re


_IDENTIFIER = re.compile("^[a-zA-Z0-9_-]+$")


def is_valid_identifier(identifier: str) -> bool:

    assert isinstance(identifier, str), "Identifier must be a string"

    return bool(_IDENTIFIER.match(identifier))


def default_identifiers(count: int):
    """Zero-padded row indices, used when a dataset carries no identifiers."""

    width = max(5, len(str(count - 1)))

    return [str(index).zfill(width) for index in range(count)]
