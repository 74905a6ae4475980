"""Reference Rampichini diagrams and the band words read off them."""
from __future__ import annotations

from typing import Final

from .const import Direction, Over
from .rampichini import Cross, Entry, RampichiniDiagram, Wrap, relabel, translate

UP: Final = Direction.UP
DOWN: Final = Direction.DOWN

# cuts of the four-strand diagram, with the words they read
FOUR_STRAND_CUTS: Final = (0, 1, 3, 4, 5, 6, 7, 8)
FOUR_STRAND_WORDS: Final = (
    "a(1,2) A(3,4) a(2,3)",
    "A(3,4) a(1,2) a(2,3)",
    "a(2,3) a(1,3) A(3,4)",
    "a(2,3) A(1,4) a(1,3)",
    "a(1,3) a(2,3) A(1,4)",
    "a(1,3) A(1,4) a(2,3)",
    "A(1,4) a(3,4) a(2,3)",
    "a(2,3) A(1,4) a(3,4)",
)

THREE_STRAND_CUT: Final = 2
THREE_STRAND_WORD: Final = "a(2,3) a(1,2) a(2,3) a(1,2)"

SUMMAND_WORDS: Final = ("a(1,3) a(1,2) a(1,3) a(1,2)", "a(1,3) a(2,3) a(1,3) a(2,3)")

# two mergers of the summands differing by a swap of commuting bands
INTERLEAVED_MAP: Final = (1, 3, 6, 7, 2, 4, 5, 8)
INTERLEAVED_SWAPPED_MAP: Final = (1, 3, 6, 8, 2, 4, 5, 7)
INTERLEAVED_WORD: Final = "a(1,3) a(3,5) a(1,2) a(4,5) a(3,5) a(1,3) a(1,2) a(4,5)"
INTERLEAVED_SWAPPED_WORD: Final = (
    "a(1,3) a(3,5) a(1,2) a(4,5) a(3,5) a(1,3) a(4,5) a(1,2)"
)
CONNECTED_SUM_WORD: Final = "a(1,3) a(1,2) a(1,3) a(1,2) a(3,5) a(4,5) a(3,5) a(4,5)"


def hopf_diagram() -> RampichiniDiagram:
    """Return the positive Hopf band."""
    return RampichiniDiagram(2, (Entry(1, 2, 1, UP),), (Wrap(UP),))


def twisted_band_diagram(k: int, sign: int = 1) -> RampichiniDiagram:
    """Return an unknotted band with k half twists, closing a(1,2)^k."""
    return RampichiniDiagram(2, (Entry(1, 2, sign, UP),) * k, (Wrap(UP),))


def unbook_diagram() -> RampichiniDiagram:
    """Return the empty diagram of the disk."""
    return RampichiniDiagram(1, ())


def four_strand_diagram() -> RampichiniDiagram:
    """Return a four-strand diagram with one negative band and a falling strand."""
    return RampichiniDiagram(
        4,
        (Entry(1, 2, 1, UP), Entry(3, 4, -1, DOWN), Entry(2, 3, 1, UP)),
        (
            Cross(1, Over.UPPER),
            Cross(2, Over.UPPER),
            Wrap(DOWN),
            Cross(2, Over.LOWER),
            Wrap(UP),
            Cross(2, Over.UPPER),
            Cross(1, Over.UPPER),
            Wrap(UP),
        ),
    )


def three_strand_diagram() -> RampichiniDiagram:
    """Return a three-strand diagram whose cut 2 reads a23 a12 a23 a12."""
    return RampichiniDiagram(
        3,
        (Entry(1, 2), Entry(2, 3), Entry(1, 3), Entry(1, 2)),
        (Cross(3, Over.UPPER), Wrap(UP), Wrap(UP), Cross(1, Over.UPPER)),
    )


def plumbing_summands() -> tuple[RampichiniDiagram, RampichiniDiagram]:
    """Return translates of the three-strand diagram reading the summand words."""
    first = relabel(translate(three_strand_diagram(), 3), -1)
    second = relabel(translate(three_strand_diagram(), 2), 1)
    return first, second
