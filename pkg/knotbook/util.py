"""Utility functions."""
from __future__ import annotations

import json
from functools import cache
from pathlib import Path

from .exceptions import KnotbookParseError


def sign(value: int) -> int:
    """Return +1, -1 or 0 for the sign of an integer."""
    return (value > 0) - (value < 0)


def read_source(value: str) -> tuple[str, Path | None]:
    """Return inline text, or the contents of the file named by '@path'."""
    if not value.startswith("@"):
        return value, None

    path = Path(value[1:])
    try:
        return path.read_text(encoding="utf-8"), path
    except OSError as exc:
        raise KnotbookParseError(f"Cannot read input file '{path}': {exc}") from exc


@cache
def sw_version() -> str:
    """Return the package version recorded in manifest.json."""
    manifest = Path(__file__).with_name("manifest.json")
    return json.loads(manifest.read_text(encoding="utf-8"))["version"]


def split_header(text: str) -> tuple[dict[str, str], str]:
    """Split leading 'key=value;' headers from the body of a word."""
    headers: dict[str, str] = {}
    body = text.strip()
    while ";" in body:
        head, rest = body.split(";", 1)
        if "=" not in head:
            break
        key, value = (part.strip() for part in head.split("=", 1))
        headers[key] = value
        body = rest.strip()
    return headers, body


def parse_int(token: str, position: int | None = None) -> int:
    """Parse a decimal integer token."""
    try:
        return int(token)
    except ValueError as exc:
        raise KnotbookParseError(f"Expected an integer, got '{token}'", position) from exc
