"""Tests for configuration loading."""
from __future__ import annotations

from pathlib import Path

import pytest
import voluptuous as vol

from knotbook.config_schema import (
    MEMO_SIZE_SCHEMA,
    env_memo_size,
    load_config,
    resolve_memo_size,
)
from knotbook.const import DEFAULT_MEMO_SIZE, MEMO_SIZE_ENV, EngineType
from knotbook.exceptions import KnotbookParseError

SAMPLE_CONFIG = Path(__file__).parent.parent / "config" / "knotbook.yaml"


def write(tmp_path, text: str) -> Path:
    path = tmp_path / "knotbook.yaml"
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults():
    config = load_config(None)
    assert config["logger"] == {"default": "warning", "logs": {}}
    assert config["engine"] == {"type": EngineType.HECKE}
    assert config["arcpres"] == {"max_vertices": 64, "seed": 0}


def test_sample_config_loads():
    config = load_config(SAMPLE_CONFIG)
    assert config["engine"]["memo_size"] == 65536
    assert config["logger"]["logs"] == {"knotbook": "info"}


def test_values_are_coerced(tmp_path):
    config = load_config(
        write(tmp_path, "engine:\n  type: skein\n  memo_size: '128'\nlogger:\n  default: DEBUG\n")
    )
    assert config["engine"]["type"] is EngineType.SKEIN
    assert config["engine"]["memo_size"] == 128
    assert config["logger"]["default"] == "debug"


def test_empty_file_gives_defaults(tmp_path):
    assert load_config(write(tmp_path, "")) == load_config(None)


@pytest.mark.parametrize(
    "text",
    [
        "engine: [\n",
        "engine:\n  type: grid\n",
        "arcpres:\n  max_vertices: 0\n",
        "logger:\n  default: chatty\n",
        "unknown: 1\n",
    ],
)
def test_invalid_config(tmp_path, text):
    with pytest.raises(KnotbookParseError):
        load_config(write(tmp_path, text))


def test_missing_config_file(tmp_path):
    with pytest.raises(KnotbookParseError):
        load_config(tmp_path / "absent.yaml")


@pytest.mark.parametrize(
    ("value", "expected"),
    [(None, None), ("none", None), ("Unbounded", None), ("", None), ("0", 0), (42, 42)],
)
def test_memo_size_schema(value, expected):
    assert MEMO_SIZE_SCHEMA(value) == expected


@pytest.mark.parametrize("value", ["-1", "lots", -3])
def test_memo_size_schema_rejects(value):
    with pytest.raises(vol.Invalid):
        MEMO_SIZE_SCHEMA(value)


def test_env_memo_size():
    assert env_memo_size({}) == DEFAULT_MEMO_SIZE
    assert env_memo_size({MEMO_SIZE_ENV: "1024"}) == 1024
    assert env_memo_size({MEMO_SIZE_ENV: "none"}) is None
    with pytest.raises(KnotbookParseError):
        env_memo_size({MEMO_SIZE_ENV: "lots"})


def test_config_file_wins_over_environment(monkeypatch):
    monkeypatch.setenv(MEMO_SIZE_ENV, "10")
    assert resolve_memo_size({"engine": {"memo_size": 20}}) == 20
    assert resolve_memo_size({"engine": {}}) == 10
    monkeypatch.delenv(MEMO_SIZE_ENV)
    assert resolve_memo_size({}) == DEFAULT_MEMO_SIZE
