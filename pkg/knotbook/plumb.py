"""Mergers and braided plumbing of band words."""
from __future__ import annotations

import re
from collections.abc import Sequence
from dataclasses import dataclass, field
from itertools import combinations
from typing import Final

from .braidcore import BklWord, bkl_shift
from .const import _LOGGER
from .exceptions import KnotbookDomainError, KnotbookParseError
from .util import parse_int

_MERGER_TEXT: Final = re.compile(
    r"\s*f\s*=\s*(?P<map>[-\d,\s]*?)\s*[;\s]\s*"
    r"sizes\s*=\s*\(\s*(?P<l1>\d+)\s*,\s*(?P<l2>\d+)\s*\)\s*"
)


@dataclass(frozen=True)
class MergerReport:
    """Outcome of merger validation."""

    valid: bool
    violations: tuple[str, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.valid


def validate_merger(map_: Sequence[int], l1: int, l2: int) -> MergerReport:
    """Check bijectivity and monotonicity of both blocks."""
    if l1 < 0 or l2 < 0:
        raise KnotbookDomainError(f"Merger sizes must be non-negative: ({l1}, {l2})")
    if len(map_) != l1 + l2:
        raise KnotbookDomainError(
            f"Merger length {len(map_)} does not match sizes ({l1}, {l2})"
        )

    violations = []
    if sorted(map_) != list(range(1, l1 + l2 + 1)):
        violations.append(f"not a bijection on 1..{l1 + l2}")
    for name, block in (("first", map_[:l1]), ("second", map_[l1:])):
        for x, (a, b) in enumerate(zip(block, block[1:])):
            if a >= b:
                violations.append(f"{name} block not increasing at {x + 1}: {a} >= {b}")
                break
    return MergerReport(not violations, tuple(violations))


@dataclass(frozen=True)
class Merger:
    """Order-preserving interleaving of two index blocks, stored as 1-based images."""

    map: tuple[int, ...]
    sizes: tuple[int, int]

    def __post_init__(self) -> None:
        """Reject invalid maps."""
        object.__setattr__(self, "map", tuple(self.map))
        object.__setattr__(self, "sizes", tuple(self.sizes))
        report = validate_merger(self.map, *self.sizes)
        if not report:
            raise KnotbookDomainError(
                f"Invalid merger {list(self.map)}: {'; '.join(report.violations)}"
            )

    @classmethod
    def identity(cls, l1: int, l2: int) -> Merger:
        """Return the identity merger, which gives the connected sum."""
        return cls(tuple(range(1, l1 + l2 + 1)), (l1, l2))

    @classmethod
    def from_first_positions(cls, positions: Sequence[int], l1: int, l2: int) -> Merger:
        """Build the merger sending the first block to the given output positions."""
        rest = [k for k in range(1, l1 + l2 + 1) if k not in set(positions)]
        return cls(tuple(positions) + tuple(rest), (l1, l2))

    def __len__(self) -> int:
        return len(self.map)

    def __call__(self, index: int) -> int:
        return self.map[index - 1]

    def inverse(self) -> tuple[int, ...]:
        """Return f^-1 as 1-based images."""
        result = [0] * len(self.map)
        for index, image in enumerate(self.map, start=1):
            result[image - 1] = index
        return tuple(result)

    def __str__(self) -> str:
        return format_merger(self)


def enumerate_mergers(l1: int, l2: int) -> list[Merger]:
    """Return every merger of the given sizes in lexicographic order."""
    if l1 < 0 or l2 < 0:
        raise KnotbookDomainError(f"Merger sizes must be non-negative: ({l1}, {l2})")
    return [
        Merger.from_first_positions(chosen, l1, l2)
        for chosen in combinations(range(1, l1 + l2 + 1), l1)
    ]


def plumb_words(b1: BklWord, b2: BklWord, merger: Merger) -> BklWord:
    """Interleave b1 and b2 shifted by n1-1, placing input letter k at position f(k)."""
    if merger.sizes != (len(b1), len(b2)):
        raise KnotbookDomainError(
            f"Merger sizes {merger.sizes} do not match word lengths "
            f"({len(b1)}, {len(b2)})"
        )
    if b1.strands < 2 or b2.strands < 2:
        raise KnotbookDomainError(
            f"Plumbing needs at least 2 strands per word, got ({b1.strands}, {b2.strands})"
        )

    n1, n2 = b1.strands, b2.strands
    total = n1 + n2 - 1
    shifted = bkl_shift(b2, n1 - 1, total)
    letters = b1.letters + shifted.letters
    output = [letters[index - 1] for index in merger.inverse()]

    _LOGGER.debug("plumb; n=(%s, %s); merger=%s; plumbed", n1, n2, merger)
    return BklWord(tuple(output), total)


def connected_sum_word(b1: BklWord, b2: BklWord) -> BklWord:
    """Plumb with the identity merger."""
    return plumb_words(b1, b2, Merger.identity(len(b1), len(b2)))


def parse_merger(text: str) -> Merger:
    """Parse 'f=2,1,3 sizes=(2,1)'; ';' may separate the two parts."""
    match = _MERGER_TEXT.fullmatch(text)
    if match is None:
        raise KnotbookParseError(f"Expected 'f=<images> sizes=(l1,l2)', got '{text}'")

    images = [tok for tok in re.split(r"[,\s]+", match["map"]) if tok]
    map_ = tuple(parse_int(tok, pos) for pos, tok in enumerate(images))
    return Merger(map_, (int(match["l1"]), int(match["l2"])))


def format_merger(merger: Merger) -> str:
    """Render a merger in the text format."""
    l1, l2 = merger.sizes
    return f"f={','.join(map(str, merger.map))} sizes=({l1},{l2})"
