"""Oriented planar diagrams in PD notation and Seifert's algorithm."""
from __future__ import annotations

import re
from collections import Counter, defaultdict
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Final, NamedTuple

from networkx.utils import UnionFind

from .braidcore import ArtinWord
from .const import _LOGGER
from .exceptions import (
    InconsistentResultError,
    KnotbookDomainError,
    KnotbookParseError,
    MultiComponentError,
)

Crossing = tuple[int, int, int, int]
Dart = tuple[int, int]  # (crossing index, arm index 0..3)

_PD_TEXT: Final = re.compile(r"\s*PD\s*\[(?P<body>.*)\]\s*", re.DOTALL)
_CROSSING_TEXT: Final = re.compile(
    r"\s*X\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)\s*"
)

UNDER_IN: Final = 0
UNDER_OUT: Final = 2


@dataclass(frozen=True)
class PlanarDiagram:
    """Crossings X(a,b,c,d) listed counterclockwise from the incoming under arm.

    The under strand runs a to c; over_forward[x] is True when the over strand runs
    b to d. Edges 1..2c are numbered along the orientation of each component.
    """

    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]
    over_forward: tuple[bool, ...]
    unknot_components: int = field(default=0)

    @property
    def crossing_count(self) -> int:
        """Return c."""
        return len(self.crossings)

    @property
    def edge_count(self) -> int:
        """Return 2c."""
        return 2 * len(self.crossings)

    @property
    def component_count(self) -> int:
        """Return the number of link components."""
        return len(self.components) + self.unknot_components

    def crossing_signs(self) -> tuple[int, ...]:
        """Return +1 where the over strand runs d to b, -1 otherwise."""
        return tuple(-1 if forward else 1 for forward in self.over_forward)

    def writhe(self) -> int:
        """Return the sum of crossing signs."""
        return sum(self.crossing_signs())

    def over_in(self, x: int) -> int:
        """Return the arm index of the incoming over strand at crossing x."""
        return 1 if self.over_forward[x] else 3

    def over_out(self, x: int) -> int:
        """Return the arm index of the outgoing over strand at crossing x."""
        return 3 if self.over_forward[x] else 1

    def edge(self, dart: Dart) -> int:
        """Return the edge label on an arm."""
        x, k = dart
        return self.crossings[x][k]

    @cached_property
    def occurrences(self) -> dict[int, tuple[Dart, Dart]]:
        """Return both arms carrying each edge."""
        found: dict[int, list[Dart]] = defaultdict(list)
        for x, crossing in enumerate(self.crossings):
            for k, e in enumerate(crossing):
                found[e].append((x, k))
        return {e: (pair[0], pair[1]) for e, pair in found.items()}

    @cached_property
    def edge_ends(self) -> dict[int, tuple[Dart, Dart]]:
        """Return (tail, head) darts of each edge: where it leaves and where it arrives."""
        tails: dict[int, Dart] = {}
        heads: dict[int, Dart] = {}
        for x, crossing in enumerate(self.crossings):
            heads[crossing[UNDER_IN]] = (x, UNDER_IN)
            tails[crossing[UNDER_OUT]] = (x, UNDER_OUT)
            heads[crossing[self.over_in(x)]] = (x, self.over_in(x))
            tails[crossing[self.over_out(x)]] = (x, self.over_out(x))
        return {e: (tails[e], heads[e]) for e in tails}

    def other_end(self, dart: Dart) -> Dart:
        """Return the arm at the far end of this arm's edge."""
        first, second = self.occurrences[self.edge(dart)]
        return second if dart == first else first

    @cached_property
    def faces(self) -> list[list[Dart]]:
        """Return the faces as dart cycles; the face of dart (x, k) holds quadrant k."""
        seen: set[Dart] = set()
        faces = []
        for x in range(self.crossing_count):
            for k in range(4):
                if (x, k) in seen:
                    continue
                face = []
                dart: Dart = (x, k)
                while dart not in seen:
                    seen.add(dart)
                    face.append(dart)
                    far_x, far_k = self.other_end(dart)
                    dart = (far_x, (far_k - 1) % 4)
                faces.append(face)
        return faces

    @cached_property
    def face_of(self) -> dict[Dart, int]:
        """Return the face index of every dart."""
        return {dart: index for index, face in enumerate(self.faces) for dart in face}

    @cached_property
    def piece_count(self) -> int:
        """Return the number of connected pieces of the diagram with crossings."""
        pieces = UnionFind(range(self.crossing_count))
        for first, second in self.occurrences.values():
            pieces.union(first[0], second[0])
        return len(list(pieces.to_sets()))

    def __str__(self) -> str:
        return format_pd(self)


class SeifertCircles(NamedTuple):
    """Circle count and the edges of each circle."""

    count: int
    circles: tuple[tuple[int, ...], ...]

    def membership(self) -> dict[int, int]:
        """Return the circle index of every edge."""
        return {e: index for index, circle in enumerate(self.circles) for e in circle}


# #### Parsing ####


def parse_pd(text: str) -> PlanarDiagram:
    """Parse 'PD[X(a,b,c,d), ...]' and validate the diagram."""
    match = _PD_TEXT.fullmatch(text)
    if match is None:
        raise KnotbookParseError("Expected 'PD[X(a,b,c,d), ...]'")

    body = match["body"]
    crossings: list[Crossing] = []
    if body.strip():
        for index, item in enumerate(re.split(r"\)\s*,", body)):
            item = item if item.rstrip().endswith(")") else item + ")"
            found = _CROSSING_TEXT.fullmatch(item)
            if found is None:
                raise KnotbookParseError(f"Malformed crossing '{item.strip()}'", index)
            crossings.append(tuple(int(g) for g in found.groups()))  # type: ignore[arg-type]
    return diagram_from_crossings(crossings)


def diagram_from_crossings(
    crossings: Sequence[Crossing], over_forward: Sequence[bool] | None = None
) -> PlanarDiagram:
    """Validate crossings and resolve the direction of every over strand.

    Labels cannot orient a two-edge component that passes over at both its crossings;
    callers that know the directions pass them as over_forward.
    """
    crossings = tuple(tuple(x) for x in crossings)  # type: ignore[misc]
    if not crossings:
        return PlanarDiagram((), (), (), unknot_components=1)

    counts = Counter(e for crossing in crossings for e in crossing)
    expected = set(range(1, 2 * len(crossings) + 1))
    for e, count in sorted(counts.items()):
        if count != 2:
            raise KnotbookDomainError(f"Edge {e} appears {count} times, expected twice")
    if set(counts) != expected:
        raise KnotbookDomainError(
            f"Edge labels must be 1..{2 * len(crossings)}, got {sorted(counts)}"
        )

    strands = UnionFind(sorted(expected))
    for a, b, c, d in crossings:
        strands.union(a, c)
        strands.union(b, d)

    components = []
    successor: dict[int, int] = {}
    for members in sorted(strands.to_sets(), key=min):
        edges = sorted(members)
        if edges != list(range(edges[0], edges[-1] + 1)):
            raise KnotbookDomainError(
                f"Edges {edges} of one component are not numbered consecutively"
            )
        components.append(tuple(edges))
        for e in edges:
            successor[e] = e + 1 if e < edges[-1] else edges[0]

    for x, (a, _, c, _) in enumerate(crossings):
        if successor[a] != c:
            raise KnotbookDomainError(
                f"Crossing {x} X{crossings[x]}: under strand {a} -> {c} against orientation"
            )

    resolved = _resolve_over(crossings, successor, over_forward)
    diagram = PlanarDiagram(crossings, tuple(components), resolved)

    # each connected piece is a plane 4-valent graph with c_i + 2 faces
    expected_faces = diagram.crossing_count + 2 * diagram.piece_count
    if len(diagram.faces) != expected_faces:
        raise KnotbookDomainError(
            f"Diagram is not planar: {len(diagram.faces)} faces, expected {expected_faces}"
        )

    _LOGGER.debug(
        "seifert; crossings=%s; components=%s; parsed",
        diagram.crossing_count,
        diagram.component_count,
    )
    return diagram


def format_pd(diagram: PlanarDiagram) -> str:
    """Render a diagram as PD text."""
    return "PD[" + ",".join(f"X({a},{b},{c},{d})" for a, b, c, d in diagram.crossings) + "]"


# #### Seifert's algorithm ####


def seifert_circles(diagram: PlanarDiagram) -> SeifertCircles:
    """Smooth every crossing along the orientation and collect the circles."""
    if not diagram.crossings:
        return SeifertCircles(diagram.unknot_components, ((),) * diagram.unknot_components)

    smoothed: dict[int, int] = {}
    for x, crossing in enumerate(diagram.crossings):
        smoothed[crossing[UNDER_IN]] = crossing[diagram.over_out(x)]
        smoothed[crossing[diagram.over_in(x)]] = crossing[UNDER_OUT]

    seen: set[int] = set()
    circles = []
    for start in sorted(smoothed):
        if start in seen:
            continue
        circle = []
        e = start
        while e not in seen:
            seen.add(e)
            circle.append(e)
            e = smoothed[e]
        circles.append(tuple(circle))
    return SeifertCircles(len(circles), tuple(circles))


def seifert_betti_number(diagram: PlanarDiagram) -> int:
    """Return c - s + 1, the first Betti number of the canonical surface of a connected diagram."""
    return diagram.crossing_count - seifert_circles(diagram).count + 1


def canonical_genus(diagram: PlanarDiagram) -> int:
    """Return the genus of the canonical Seifert surface of a knot diagram."""
    if diagram.component_count != 1:
        betti = seifert_betti_number(diagram)
        raise MultiComponentError(
            f"Diagram has {diagram.component_count} components; "
            f"first Betti number of the canonical surface is {betti}",
            components=diagram.component_count,
            betti=betti,
        )

    betti = seifert_betti_number(diagram)
    if betti < 0 or betti % 2:
        raise InconsistentResultError(f"Knot surface has odd Betti number {betti}")
    return betti // 2


# #### Braid closures ####


def braid_closure_pd(word: ArtinWord) -> PlanarDiagram:
    """Return the PD code of the closure of a braid, strands running upward."""
    k = len(word)
    arms: list[dict[str, int]] = [{} for _ in range(k)]
    next_label = 1
    visited: set[int] = set()

    for base in range(word.strands):
        if base in visited:
            continue
        # (letter index, incoming arm, outgoing arm) in traversal order
        visits: list[tuple[int, str, str]] = []
        pos = base
        while True:
            visited.add(pos)
            for t, letter in enumerate(word):
                gen = abs(letter)
                if pos == gen - 1:
                    visits.append((t, "BL", "TR"))
                    pos = gen
                elif pos == gen:
                    visits.append((t, "BR", "TL"))
                    pos = gen - 1
            if pos == base:
                break

        if not visits:
            raise KnotbookDomainError(
                f"Strand {base + 1} never crosses; closure is a split diagram"
            )

        m = len(visits)
        for index, (t, arm_in, arm_out) in enumerate(visits):
            arms[t][arm_out] = next_label + index
            arms[t][arm_in] = next_label + (index - 1) % m
        next_label += m

    crossings = []
    # over runs BL to TR on a positive letter (d to b), BR to TL on a negative one
    for t, letter in enumerate(word):
        corners = arms[t]
        if letter > 0:
            order = ("BR", "TR", "TL", "BL")
        else:
            order = ("BL", "BR", "TR", "TL")
        crossings.append(tuple(corners[name] for name in order))
    over_forward = [letter < 0 for letter in word]
    return diagram_from_crossings(crossings, over_forward)  # type: ignore[arg-type]


# #### Internal functions ####


def _resolve_over(
    crossings: Sequence[Crossing],
    successor: dict[int, int],
    known: Sequence[bool] | None = None,
) -> tuple[bool, ...]:
    """Direct each over strand; two-edge components are settled by head/tail counts."""
    forward: list[bool | None] = []
    for x, (_, b, _, d) in enumerate(crossings):
        b_to_d, d_to_b = successor[b] == d, successor[d] == b
        if not (b_to_d or d_to_b):
            raise KnotbookDomainError(
                f"Crossing {x} X{crossings[x]}: over arms {b}, {d} are not consecutive"
            )
        if known is None:
            forward.append(b_to_d if b_to_d != d_to_b else None)
        elif b_to_d != d_to_b and known[x] != b_to_d:
            raise KnotbookDomainError(
                f"Crossing {x} X{crossings[x]}: over direction contradicts the labels"
            )
        else:
            forward.append(known[x])

    heads: Counter[int] = Counter()
    tails: Counter[int] = Counter()
    for x, (a, b, c, d) in enumerate(crossings):
        heads[a] += 1
        tails[c] += 1
        if forward[x] is not None:
            heads[b if forward[x] else d] += 1
            tails[d if forward[x] else b] += 1

    for x, (_, b, _, d) in enumerate(crossings):
        if forward[x] is None:
            forward[x] = heads[b] == 0 and tails[d] == 0
            heads[b if forward[x] else d] += 1
            tails[d if forward[x] else b] += 1

    for e in successor:
        if heads[e] != 1 or tails[e] != 1:
            raise KnotbookDomainError(f"Edge {e} has {heads[e]} heads and {tails[e]} tails")
    return tuple(bool(f) for f in forward)
