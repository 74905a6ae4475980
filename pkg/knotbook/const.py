"""Constants for knotbook."""
from enum import StrEnum
from logging import Logger, getLogger
from typing import Final

_LOGGER: Logger = getLogger(__package__)

DOMAIN: Final = "knotbook"
NAME: Final = "Knotbook"

MEMO_SIZE_ENV: Final = "KNOTBOOK_MEMO_SIZE"
DEFAULT_MEMO_SIZE: Final = 1 << 16

ORACLE_MAX_LETTERS: Final = 14

DEFAULT_ARCPRES_MAX_VERTICES: Final = 64
DEFAULT_ARCPRES_SEED: Final = 0

STRANDS_HEADER: Final = "strands"

EXIT_OK: Final = 0
EXIT_DOMAIN_ERROR: Final = 1
EXIT_PARSE_ERROR: Final = 2


class EngineType(StrEnum):
    """Supported HOMFLY engines."""

    HECKE = "hecke"
    SKEIN = "skein"


class Verdict(StrEnum):
    """Survey verdicts."""

    NOT_CANONICALLY_FIBERED = "not_canonically_fibered"
    INCONCLUSIVE = "inconclusive"


class Direction(StrEnum):
    """Vertical direction of a strand on the torus."""

    UP = "up"
    DOWN = "down"


class Over(StrEnum):
    """Which of two adjacent entries passes over at a crossing."""

    LOWER = "lower"
    UPPER = "upper"


class Rule(StrEnum):
    """Rules checked when validating a Rampichini diagram."""

    LABEL_RANGE = "label_range"
    CROSS_POSITION = "cross_position"
    WRAP_DIRECTION = "wrap_direction"
    WRAP_COUNT = "wrap_count"
    SHIFTED_RETURN = "shifted_return"
    BOTTOM_PRODUCT = "bottom_product"
    MONOTONE = "monotone"


class EdgeKind(StrEnum):
    """Guide graph edge classes."""

    SHORT = "short"
    LONG = "long"
    PARALLEL = "parallel"


class SurveyFormat(StrEnum):
    """Survey output formats."""

    TSV = "tsv"
    TEXT = "text"


class Config(StrEnum):
    """Configuration keys."""

    ARCPRES = "arcpres"
    DEFAULT = "default"
    ENGINE = "engine"
    LOGGER = "logger"
    LOGS = "logs"
    MAX_VERTICES = "max_vertices"
    MEMO_SIZE = "memo_size"
    SEED = "seed"
    TYPE = "type"
