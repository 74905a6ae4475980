"""Configuration schemas for knotbook."""
from __future__ import annotations

import os
from collections.abc import Mapping
from pathlib import Path
from typing import Any, Final

import voluptuous as vol
import yaml

from .const import (
    _LOGGER,
    DEFAULT_ARCPRES_MAX_VERTICES,
    DEFAULT_ARCPRES_SEED,
    DEFAULT_MEMO_SIZE,
    MEMO_SIZE_ENV,
    Config,
    EngineType,
)
from .exceptions import KnotbookParseError

LOG_LEVELS: Final = ("critical", "error", "warning", "info", "debug")

UNBOUNDED: Final = ("", "none", "unbounded")


def _memo_size(value: Any) -> int | None:
    if value is None or (isinstance(value, str) and value.strip().lower() in UNBOUNDED):
        return None
    return vol.All(vol.Coerce(int), vol.Range(min=0))(value)


MEMO_SIZE_SCHEMA: Final = vol.Schema(_memo_size)

POSITIVE_INT: Final = vol.All(vol.Coerce(int), vol.Range(min=1))
NON_NEGATIVE_INT: Final = vol.All(vol.Coerce(int), vol.Range(min=0))

LOG_LEVEL: Final = vol.All(vol.Lower, vol.In(LOG_LEVELS))

LOGGER_SCHEMA: Final = vol.Schema(
    {
        vol.Optional(str(Config.DEFAULT), default="warning"): LOG_LEVEL,
        vol.Optional(str(Config.LOGS), default={}): {str: LOG_LEVEL},
    }
)

ENGINE_SCHEMA: Final = vol.Schema(
    {
        vol.Optional(str(Config.TYPE), default=str(EngineType.HECKE)): vol.Coerce(
            EngineType
        ),
        vol.Optional(str(Config.MEMO_SIZE)): MEMO_SIZE_SCHEMA,
    }
)

ARCPRES_SCHEMA: Final = vol.Schema(
    {
        vol.Optional(
            str(Config.MAX_VERTICES), default=DEFAULT_ARCPRES_MAX_VERTICES
        ): POSITIVE_INT,
        vol.Optional(str(Config.SEED), default=DEFAULT_ARCPRES_SEED): vol.Coerce(int),
    }
)

CONFIG_SCHEMA: Final = vol.Schema(
    {
        vol.Optional(str(Config.LOGGER), default={}): LOGGER_SCHEMA,
        vol.Optional(str(Config.ENGINE), default={}): ENGINE_SCHEMA,
        vol.Optional(str(Config.ARCPRES), default={}): ARCPRES_SCHEMA,
    }
)


def env_memo_size(environ: Mapping[str, str] | None = None) -> int | None:
    """Return the memo-size cap from the environment, or the default."""
    environ = os.environ if environ is None else environ
    if MEMO_SIZE_ENV not in environ:
        return DEFAULT_MEMO_SIZE

    try:
        return MEMO_SIZE_SCHEMA(environ[MEMO_SIZE_ENV])
    except vol.Invalid as exc:
        raise KnotbookParseError(
            f"Invalid {MEMO_SIZE_ENV} '{environ[MEMO_SIZE_ENV]}': {exc}"
        ) from exc


def load_config(path: Path | None) -> dict[str, Any]:
    """Load and validate a YAML configuration file; None yields the defaults."""
    raw: Any = {}
    if path is not None:
        try:
            raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except OSError as exc:
            raise KnotbookParseError(f"Cannot read config file '{path}': {exc}") from exc
        except yaml.YAMLError as exc:
            raise KnotbookParseError(f"Invalid YAML in '{path}': {exc}") from exc

    try:
        config = CONFIG_SCHEMA(raw)
    except vol.Invalid as exc:
        raise KnotbookParseError(f"Invalid config '{path}': {exc}") from exc

    _LOGGER.debug("config; path=%s; loaded %s", path, config)
    return config


def resolve_memo_size(config: Mapping[str, Any]) -> int | None:
    """Config file value wins over the environment."""
    engine = config.get(str(Config.ENGINE), {})
    if str(Config.MEMO_SIZE) in engine:
        return engine[str(Config.MEMO_SIZE)]
    return env_memo_size()
