"""Unmemoized skein-tree descent toward descending diagrams."""
from __future__ import annotations

from .braidcore import ArtinWord
from .const import ORACLE_MAX_LETTERS, EngineType
from .exceptions import KnotbookDomainError
from .homfly_engine import V_INV, HomflyEngine, unlink_value
from .polyring import VAR_V, VAR_Z, LaurentPoly2

V_SQUARED = VAR_V**2
V_INV_SQUARED = VAR_V**-2


class SkeinTreeEngine(HomflyEngine):
    """Switches or smooths the first crossing met from below until the closure is descending.

    Components are traversed in order of their lowest starting position, so a diagram
    in which every crossing is first met from above is a stacked unlink.
    """

    engine_type = EngineType.SKEIN

    def __init__(self, max_letters: int = ORACLE_MAX_LETTERS) -> None:
        """Initialize with the guard on word length."""
        self.max_letters = max_letters

    def evaluate(self, word: ArtinWord) -> LaurentPoly2:
        """Return the invariant of the closure by naive recursion."""
        if len(word) > self.max_letters:
            raise KnotbookDomainError(
                f"Skein oracle accepts at most {self.max_letters} letters, got {len(word)}"
            )
        return _descend(word.letters, word.strands)


def first_undercrossing(letters: tuple[int, ...], strands: int) -> tuple[int | None, int]:
    """Return the first letter index met from below, and the component count."""
    first_seen: dict[int, bool] = {}
    order: list[int] = []
    started: set[int] = set()
    components = 0

    for base in range(strands):
        if base in started:
            continue
        components += 1
        pos = base
        while True:
            started.add(pos)
            for t, letter in enumerate(letters):
                gen = abs(letter)
                if pos not in (gen - 1, gen):
                    continue
                over = (pos == gen - 1) == (letter > 0)
                if t not in first_seen:
                    first_seen[t] = over
                    order.append(t)
                pos = gen if pos == gen - 1 else gen - 1
            if pos == base:
                break

    bad = next((t for t in order if not first_seen[t]), None)
    return bad, components


# #### Internal functions ####


def _descend(letters: tuple[int, ...], strands: int) -> LaurentPoly2:
    bad, components = first_undercrossing(letters, strands)
    if bad is None:
        return unlink_value(components)

    letter = letters[bad]
    switched = letters[:bad] + (-letter,) + letters[bad + 1 :]
    smoothed = letters[:bad] + letters[bad + 1 :]

    if letter > 0:
        return V_SQUARED * _descend(switched, strands) + VAR_V * VAR_Z * _descend(
            smoothed, strands
        )
    return V_INV_SQUARED * _descend(switched, strands) - V_INV * VAR_Z * _descend(
        smoothed, strands
    )
