"""Shared fixtures."""
from __future__ import annotations

import random

import pytest

from knotbook.braidcore import ArtinWord, BandLetter, BklWord
from knotbook.hecke_engine import HeckeTraceEngine
from knotbook.skein_engine import SkeinTreeEngine

TREFOIL_PD = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]"
FIGURE_EIGHT_PD = "PD[X(4,2,5,1),X(8,6,1,5),X(6,3,7,4),X(2,7,3,8)]"
KINK_PD = "PD[X(1,1,2,2)]"


def random_artin_word(rng: random.Random, max_strands: int, max_letters: int) -> ArtinWord:
    """Return a random word on 2..max_strands strands."""
    strands = rng.randint(2, max_strands)
    length = rng.randint(0, max_letters)
    letters = tuple(
        rng.choice((1, -1)) * rng.randint(1, strands - 1) for _ in range(length)
    )
    return ArtinWord(letters, strands)


def random_bkl_word(rng: random.Random, max_strands: int, max_letters: int) -> BklWord:
    """Return a random band word on 2..max_strands strands."""
    strands = rng.randint(2, max_strands)
    letters = []
    for _ in range(rng.randint(0, max_letters)):
        i, j = sorted(rng.sample(range(1, strands + 1), 2))
        letters.append(BandLetter(i, j, rng.choice((1, -1))))
    return BklWord(tuple(letters), strands)


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so property loops are reproducible."""
    return random.Random(20230517)


@pytest.fixture
def hecke() -> HeckeTraceEngine:
    return HeckeTraceEngine()


@pytest.fixture
def skein() -> SkeinTreeEngine:
    return SkeinTreeEngine()


@pytest.fixture
def trefoil() -> ArtinWord:
    return ArtinWord((1, 1, 1), 2)
