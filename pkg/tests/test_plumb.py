"""Tests for mergers and braided plumbing of band words."""
from __future__ import annotations

from collections import Counter
from math import comb

import pytest

from knotbook.braidcore import BandLetter, BklWord, bkl_shift, bkl_to_artin, parse_bkl_word
from knotbook.exceptions import KnotbookDomainError, KnotbookParseError
from knotbook.fixtures import (
    CONNECTED_SUM_WORD,
    INTERLEAVED_MAP,
    INTERLEAVED_SWAPPED_MAP,
    INTERLEAVED_SWAPPED_WORD,
    INTERLEAVED_WORD,
    SUMMAND_WORDS,
)
from knotbook.homfly import homfly_vz
from knotbook.plumb import (
    Merger,
    connected_sum_word,
    enumerate_mergers,
    format_merger,
    parse_merger,
    plumb_words,
    validate_merger,
)

from .conftest import random_bkl_word

HOPF_BAND = BklWord((BandLetter(1, 2),), 2)


def summands() -> tuple[BklWord, BklWord]:
    return tuple(parse_bkl_word(word, strands=3) for word in SUMMAND_WORDS)


def test_validate_merger():
    assert validate_merger([2, 1], 1, 1)
    report = validate_merger([2, 1, 3], 2, 1)
    assert not report
    assert "first block" in report.violations[0]
    assert not validate_merger([1, 1, 3], 1, 2)


def test_validate_merger_rejects_bad_sizes():
    with pytest.raises(KnotbookDomainError):
        validate_merger([1, 2], 1, 2)
    with pytest.raises(KnotbookDomainError):
        validate_merger([], -1, 1)


@pytest.mark.parametrize("l1", range(6))
@pytest.mark.parametrize("l2", range(6))
def test_enumerate_mergers(l1, l2):
    mergers = enumerate_mergers(l1, l2)
    count = comb(l1 + l2, l1)
    assert len(mergers) == count
    assert len({m.map for m in mergers}) == count
    assert all(validate_merger(m.map, l1, l2) for m in mergers)


def test_enumerate_mergers_starts_with_identity():
    assert enumerate_mergers(2, 3)[0] == Merger.identity(2, 3)


def test_merger_basics():
    merger = Merger((2, 1, 3), (1, 2))
    assert merger(1) == 2
    assert len(merger) == 3
    assert merger.inverse() == (2, 1, 3)
    assert Merger.from_first_positions((1, 3), 2, 1).map == (1, 3, 2)
    with pytest.raises(KnotbookDomainError):
        Merger((2, 1, 3), (2, 1))


@pytest.mark.parametrize(
    ("merger_map", "expected"),
    [
        (INTERLEAVED_MAP, INTERLEAVED_WORD),
        (INTERLEAVED_SWAPPED_MAP, INTERLEAVED_SWAPPED_WORD),
        (tuple(range(1, 9)), CONNECTED_SUM_WORD),
    ],
)
def test_plumb_summands(merger_map, expected):
    b1, b2 = summands()
    plumbed = plumb_words(b1, b2, Merger(merger_map, (4, 4)))
    assert plumbed == parse_bkl_word(expected, strands=5)


def test_plumb_words_keeps_letters_in_order(rng):
    for _ in range(100):
        b1, b2 = random_bkl_word(rng, 4, 5), random_bkl_word(rng, 4, 5)
        mergers = enumerate_mergers(len(b1), len(b2))
        merger = rng.choice(mergers)
        plumbed = plumb_words(b1, b2, merger)
        n1, total = b1.strands, b1.strands + b2.strands - 1
        shifted = bkl_shift(b2, n1 - 1, total)
        assert plumbed.strands == total
        assert Counter(plumbed.letters) == Counter(b1.letters + shifted.letters)

        l1 = len(b1)
        assert [plumbed.letters[merger(k) - 1] for k in range(1, l1 + 1)] == list(b1.letters)
        assert [
            plumbed.letters[merger(l1 + k) - 1] for k in range(1, len(b2) + 1)
        ] == list(shifted.letters)


def test_commuting_swap_keeps_homfly(hecke):
    b1, b2 = summands()
    first = plumb_words(b1, b2, Merger(INTERLEAVED_MAP, (4, 4)))
    second = plumb_words(b1, b2, Merger(INTERLEAVED_SWAPPED_MAP, (4, 4)))
    assert first != second
    assert homfly_vz(bkl_to_artin(first), hecke) == homfly_vz(bkl_to_artin(second), hecke)


def test_swapping_bands_off_the_shared_point_keeps_homfly(rng, hecke):
    checked = 0
    while checked < 10:
        b1, b2 = random_bkl_word(rng, 3, 3), random_bkl_word(rng, 3, 3)
        merger = rng.choice(enumerate_mergers(len(b1), len(b2)))
        plumbed = plumb_words(b1, b2, merger)
        n1 = b1.strands
        from_second = [False] * len(plumbed)
        for k in range(len(b1) + 1, len(merger) + 1):
            from_second[merger(k) - 1] = True

        # bands of different summands commute unless both end at point n1
        swaps = [
            pos
            for pos in range(len(plumbed) - 1)
            if from_second[pos] != from_second[pos + 1]
            and not (
                n1 in plumbed.letters[pos][:2] and n1 in plumbed.letters[pos + 1][:2]
            )
        ]
        if not swaps:
            continue
        pos = rng.choice(swaps)
        letters = list(plumbed.letters)
        letters[pos], letters[pos + 1] = letters[pos + 1], letters[pos]
        swapped = BklWord(tuple(letters), plumbed.strands)
        assert homfly_vz(bkl_to_artin(plumbed), hecke) == homfly_vz(
            bkl_to_artin(swapped), hecke
        )
        checked += 1


def test_plumb_hopf_bands():
    assert connected_sum_word(HOPF_BAND, HOPF_BAND) == parse_bkl_word(
        "a(1,2) a(2,3)", strands=3
    )
    swapped = plumb_words(HOPF_BAND, HOPF_BAND, Merger((2, 1), (1, 1)))
    assert swapped == parse_bkl_word("a(2,3) a(1,2)", strands=3)


def test_plumb_with_empty_word():
    b1, _ = summands()
    plumbed = connected_sum_word(b1, BklWord((), 2))
    assert plumbed.strands == 4
    assert plumbed.letters == b1.letters


def test_plumb_rejects_mismatched_merger():
    b1, b2 = summands()
    with pytest.raises(KnotbookDomainError):
        plumb_words(b1, b2, Merger.identity(4, 3))
    with pytest.raises(KnotbookDomainError):
        plumb_words(BklWord((), 1), HOPF_BAND, Merger.identity(0, 1))


def test_parse_and_format_merger():
    merger = parse_merger("f=2,1,3;sizes=(1,2)")
    assert merger == Merger((2, 1, 3), (1, 2))
    assert format_merger(merger) == "f=2,1,3 sizes=(1,2)"
    assert parse_merger(format_merger(merger)) == merger
    assert parse_merger(" f = 1, 2  sizes = ( 1 , 1 ) ") == Merger.identity(1, 1)


@pytest.mark.parametrize("text", ["", "f=1,x sizes=(1,1)", "sizes=(1,1)", "f=1,2"])
def test_parse_merger_errors(text):
    with pytest.raises(KnotbookParseError):
        parse_merger(text)


def test_parse_merger_rejects_invalid_map():
    with pytest.raises(KnotbookDomainError):
        parse_merger("f=2,1,3 sizes=(2,1)")
