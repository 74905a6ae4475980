"""Guide graphs of Seifert surfaces and the arc presentations built from them.

Every crossing is ringed by four loop edges meeting its arms, and every diagram edge is
flanked by two parallel edges. Smoothing each 4-valent vertex of this graph without
going straight yields an unknot U. The link then meets the disk bounded by U in 8c
points, and each guide edge gets a page label in {-2, -1, 0, 1, 2}.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from random import Random
from typing import Final, NamedTuple

import networkx as nx
from networkx.utils import UnionFind

from .const import _LOGGER, DEFAULT_ARCPRES_MAX_VERTICES, DEFAULT_ARCPRES_SEED, EdgeKind
from .exceptions import InconsistentResultError, KnotbookDomainError, SearchLimitError
from .seifert import PlanarDiagram, seifert_circles

Vertex = tuple[int, int]  # (crossing, arm)
HalfEdge = tuple[int, int]  # (edge index, 0 at u or 1 at v)
Rotation = tuple[HalfEdge, HalfEdge, HalfEdge, HalfEdge]

LEFT: Final = 0
RIGHT: Final = 1

# smoothing 0 joins rotation slots (0,1) and (2,3); smoothing 1 joins (1,2) and (3,0)
_PAIRINGS: Final = (((0, 1), (2, 3)), ((1, 2), (3, 0)))


class GuideEdge(NamedTuple):
    """Edge of the guide graph, oriented u -> v."""

    index: int
    u: Vertex
    v: Vertex
    kind: EdgeKind
    crossing: int | None = None
    quadrant: int | None = None
    diagram_edge: int | None = None
    side: int | None = None

    def endpoint(self, end: int) -> Vertex:
        """Return u for end 0 and v for end 1."""
        return self.v if end else self.u


@dataclass(frozen=True)
class GuideGraph:
    """4-valent plane graph given by its edges and the rotation at each vertex."""

    edges: tuple[GuideEdge, ...]
    rotation: Mapping[Vertex, Rotation]
    crossing_count: int = 0

    @property
    def vertex_count(self) -> int:
        """Return the number of vertices."""
        return len(self.rotation)

    @property
    def edge_count(self) -> int:
        """Return the number of edges."""
        return len(self.edges)

    @cached_property
    def graph(self) -> nx.MultiGraph:
        """Return the underlying multigraph, keyed by edge index."""
        graph = nx.MultiGraph()
        graph.add_nodes_from(self.rotation)
        for edge in self.edges:
            graph.add_edge(edge.u, edge.v, key=edge.index, kind=edge.kind)
        return graph

    def kind_counts(self) -> Counter[EdgeKind]:
        """Return how many edges fall in each class."""
        return Counter(edge.kind for edge in self.edges)

    def is_connected(self) -> bool:
        """Return True if the graph is connected."""
        return self.vertex_count > 0 and nx.is_connected(self.graph)

    def faces(self) -> list[list[HalfEdge]]:
        """Trace the faces of the rotation system."""
        seen: set[HalfEdge] = set()
        faces = []
        for vertex in sorted(self.rotation):
            for start in self.rotation[vertex]:
                if start in seen:
                    continue
                face = []
                dart = start
                while dart not in seen:
                    seen.add(dart)
                    face.append(dart)
                    dart = self._next_dart(dart)
                faces.append(face)
        return faces

    def face_count(self) -> int:
        """Return the number of faces of the embedding."""
        return len(self.faces())

    def euler_characteristic(self) -> int:
        """Return V - E + F, which is 2 for a connected plane graph."""
        return self.vertex_count - self.edge_count + self.face_count()

    def incidence_violations(self) -> list[str]:
        """List vertices not meeting exactly one short, one long and two parallel edges."""
        expected = Counter({EdgeKind.SHORT: 1, EdgeKind.LONG: 1, EdgeKind.PARALLEL: 2})
        violations = []
        for vertex, slots in sorted(self.rotation.items()):
            found = Counter(self.edges[index].kind for index, _ in slots)
            if found != expected:
                summary = ", ".join(f"{kind}={found[kind]}" for kind in EdgeKind)
                violations.append(f"vertex {vertex}: {summary}")
        return violations

    # #### Internal methods ####

    def _next_dart(self, dart: HalfEdge) -> HalfEdge:
        index, end = dart
        arrival = (index, 1 - end)
        slots = self.rotation[self.edges[index].endpoint(1 - end)]
        return slots[(slots.index(arrival) + 1) % 4]


@dataclass(frozen=True)
class ArcPresentationReport:
    """Outcome of the arc presentation pipeline."""

    crossing_count: int
    smoothing: dict[Vertex, int]
    unknot_edge_count: int
    link_arc_count: int
    page_labels: dict[int, int]
    kind_counts: dict[EdgeKind, int] = field(default_factory=dict)

    @property
    def distinct_labels(self) -> tuple[int, ...]:
        """Return the page labels in use, ascending."""
        return tuple(sorted(set(self.page_labels.values())))

    def label_counts(self) -> dict[int, int]:
        """Return how many edges carry each label."""
        return dict(sorted(Counter(self.page_labels.values()).items()))


class _CurveTracker:
    """Union-find over guide edges with rollback, tracking unmatched edge ends."""

    def __init__(self, edge_count: int) -> None:
        self._total = edge_count
        self._parent = list(range(edge_count))
        self._size = [1] * edge_count
        self._open = [2] * edge_count
        self._history: list[tuple[int, int | None, int]] = []

    def find(self, item: int) -> int:
        while self._parent[item] != item:
            item = self._parent[item]
        return item

    def join(self, first: int, second: int) -> bool:
        """Join two edge ends; False if this closes a curve missing some edges."""
        root, other = self.find(first), self.find(second)
        if root == other:
            self._history.append((root, None, self._open[root]))
            self._open[root] -= 2
        else:
            if self._size[root] < self._size[other]:
                root, other = other, root
            self._history.append((root, other, self._open[root]))
            self._parent[other] = root
            self._size[root] += self._size[other]
            self._open[root] += self._open[other] - 2
        return self._open[root] > 0 or self._size[root] == self._total

    def mark(self) -> int:
        return len(self._history)

    def rollback(self, mark: int) -> None:
        while len(self._history) > mark:
            root, other, open_ = self._history.pop()
            if other is not None:
                self._parent[other] = other
                self._size[root] -= self._size[other]
            self._open[root] = open_

    def curve_count(self) -> int:
        return sum(1 for item in range(self._total) if self._parent[item] == item)


def build_guide_graph(diagram: PlanarDiagram) -> GuideGraph:
    """Build the guide graph of a connected diagram with at least one crossing."""
    if diagram.crossing_count < 1:
        raise KnotbookDomainError("Guide graph needs a diagram with at least one crossing")
    if diagram.piece_count != 1:
        raise KnotbookDomainError(
            f"Diagram is disconnected ({diagram.piece_count} pieces)"
        )

    membership = seifert_circles(diagram).membership()
    edges: list[GuideEdge] = []
    loop_next: dict[Vertex, HalfEdge] = {}
    loop_prev: dict[Vertex, HalfEdge] = {}

    for x, crossing in enumerate(diagram.crossings):
        for k in range(4):
            after = (k + 1) % 4
            long = membership[crossing[k]] != membership[crossing[after]]
            index = len(edges)
            edges.append(
                GuideEdge(
                    index,
                    (x, k),
                    (x, after),
                    EdgeKind.LONG if long else EdgeKind.SHORT,
                    crossing=x,
                    quadrant=k,
                )
            )
            loop_next[(x, k)] = (index, 0)
            loop_prev[(x, after)] = (index, 1)

    rotation: dict[Vertex, Rotation] = {}
    for e, (tail, head) in sorted(diagram.edge_ends.items()):
        left, right = len(edges), len(edges) + 1
        for index, side in ((left, LEFT), (right, RIGHT)):
            edges.append(
                GuideEdge(index, tail, head, EdgeKind.PARALLEL, diagram_edge=e, side=side)
            )
        rotation[tail] = ((left, 0), loop_next[tail], loop_prev[tail], (right, 0))
        rotation[head] = ((right, 1), loop_next[head], loop_prev[head], (left, 1))

    guide = GuideGraph(tuple(edges), rotation, diagram.crossing_count)
    _LOGGER.debug(
        "arcpres; crossings=%s; vertices=%s; edges=%s; kinds=%s",
        diagram.crossing_count,
        guide.vertex_count,
        guide.edge_count,
        dict(guide.kind_counts()),
    )
    return guide


def smooth_to_unknot(
    guide: GuideGraph,
    seed: int = DEFAULT_ARCPRES_SEED,
    max_vertices: int = DEFAULT_ARCPRES_MAX_VERTICES,
) -> dict[Vertex, int]:
    """Choose a non-crossing smoothing at every vertex leaving a single closed curve."""
    if guide.vertex_count > max_vertices:
        raise SearchLimitError(
            f"Guide graph has {guide.vertex_count} vertices, limit is {max_vertices}"
        )
    if not guide.is_connected():
        raise KnotbookDomainError("Guide graph is disconnected")

    rng = Random(seed)
    root = rng.choice(sorted(guide.rotation))
    order = [root] + [v for _, v in nx.bfs_edges(guide.graph, root)]
    preference = {vertex: rng.sample((0, 1), 2) for vertex in order}

    tracker = _CurveTracker(guide.edge_count)
    chosen: dict[Vertex, int] = {}
    visits = 0

    def descend(depth: int) -> bool:
        nonlocal visits
        if depth == len(order):
            return True
        vertex = order[depth]
        slots = guide.rotation[vertex]
        for choice in preference[vertex]:
            visits += 1
            mark = tracker.mark()
            joined = all(
                tracker.join(slots[i][0], slots[j][0]) for i, j in _PAIRINGS[choice]
            )
            if joined and descend(depth + 1):
                chosen[vertex] = choice
                return True
            tracker.rollback(mark)
        return False

    if not descend(0):
        raise InconsistentResultError("No smoothing of the guide graph gives one curve")

    _LOGGER.debug(
        "arcpres; vertices=%s; seed=%s; visits=%s; smoothed",
        guide.vertex_count,
        seed,
        visits,
    )
    return dict(sorted(chosen.items()))


def curve_count(guide: GuideGraph, smoothing: Mapping[Vertex, int]) -> int:
    """Return the number of closed curves left by a smoothing."""
    tracker = _CurveTracker(guide.edge_count)
    for vertex, slots in guide.rotation.items():
        for i, j in _PAIRINGS[smoothing[vertex]]:
            tracker.join(slots[i][0], slots[j][0])
    return tracker.curve_count()


def page_labels(diagram: PlanarDiagram, guide: GuideGraph) -> dict[int, int]:
    """Label each guide edge with the page, in units of epsilon, it is pushed onto.

    Long edges go to 2 sign(crossing). A short or parallel edge lying on the Seifert
    disk of its circle stays at 0; otherwise it moves to the side below that disk.
    """
    circles = seifert_circles(diagram)
    membership = circles.membership()
    region_of = _regions(diagram)
    signs = diagram.crossing_signs()

    tree = nx.Graph()
    tree.add_nodes_from(set(region_of.values()))
    sides: dict[int, tuple[int, int]] = {}
    for index, circle in enumerate(circles.circles):
        tail, head = diagram.edge_ends[circle[0]]
        left = region_of[diagram.face_of[tail]]
        right = region_of[diagram.face_of[head]]
        sides[index] = (left, right)
        tree.add_edge(left, right, circle=index)
    if not nx.is_tree(tree) or tree.number_of_edges() != circles.count:
        raise InconsistentResultError(
            f"{circles.count} Seifert circles do not split the sphere into "
            f"{circles.count + 1} regions"
        )

    outer_face = max(
        range(len(diagram.faces)), key=lambda f: (len(diagram.faces[f]), -f)
    )
    depth = nx.shortest_path_length(tree, region_of[outer_face])
    disk_side = {
        index: max((left, right), key=depth.__getitem__)
        for index, (left, right) in sides.items()
    }
    orientation = {
        index: 1 if disk_side[index] == left else -1
        for index, (left, right) in sides.items()
    }

    def off_disk(circle: int, face: int) -> int:
        region = region_of[face]
        return 0 if region == disk_side[circle] else -orientation[circle]

    labels = {}
    for edge in guide.edges:
        match edge.kind:
            case EdgeKind.LONG:
                labels[edge.index] = 2 * signs[edge.crossing]
            case EdgeKind.SHORT:
                dart = (edge.crossing, edge.quadrant)
                circle = membership[diagram.edge(dart)]
                labels[edge.index] = off_disk(circle, diagram.face_of[dart])
            case EdgeKind.PARALLEL:
                tail, head = diagram.edge_ends[edge.diagram_edge]
                dart = tail if edge.side == LEFT else head
                circle = membership[edge.diagram_edge]
                labels[edge.index] = off_disk(circle, diagram.face_of[dart])
    return labels


def arc_presentation(
    diagram: PlanarDiagram,
    seed: int = DEFAULT_ARCPRES_SEED,
    max_vertices: int = DEFAULT_ARCPRES_MAX_VERTICES,
) -> ArcPresentationReport:
    """Run the pipeline: guide graph, unknotting smoothing, page labels."""
    guide = build_guide_graph(diagram)

    violations = guide.incidence_violations()
    if violations:
        raise InconsistentResultError(
            "Guide graph vertex incidence fails: " + "; ".join(violations)
        )
    if guide.euler_characteristic() != 2:
        raise InconsistentResultError(
            f"Guide graph rotation is not planar: V - E + F = "
            f"{guide.euler_characteristic()}"
        )

    smoothing = smooth_to_unknot(guide, seed, max_vertices)
    curves = curve_count(guide, smoothing)
    if curves != 1:
        raise InconsistentResultError(f"Smoothing left {curves} curves")

    labels = page_labels(diagram, guide)
    report = ArcPresentationReport(
        crossing_count=diagram.crossing_count,
        smoothing=smoothing,
        unknot_edge_count=guide.edge_count,
        link_arc_count=2 * guide.vertex_count,
        page_labels=labels,
        kind_counts=dict(guide.kind_counts()),
    )
    _LOGGER.debug(
        "arcpres; crossings=%s; arcs=%s; labels=%s",
        report.crossing_count,
        report.link_arc_count,
        report.label_counts(),
    )
    return report


def format_report(report: ArcPresentationReport) -> str:
    """Render a report as 'key: value' lines."""
    kinds = " ".join(f"{kind}={report.kind_counts.get(kind, 0)}" for kind in EdgeKind)
    pages = " ".join(f"{label:+d}:{count}" for label, count in report.label_counts().items())
    bits = "".join(str(report.smoothing[vertex]) for vertex in sorted(report.smoothing))
    return "\n".join(
        (
            f"crossings: {report.crossing_count}",
            f"guide vertices: {len(report.smoothing)}",
            f"guide edges: {kinds}",
            f"unknot edges: {report.unknot_edge_count}",
            f"link arcs: {report.link_arc_count}",
            f"pages: {pages}",
            f"smoothing: {bits}",
        )
    )


# #### Internal functions ####


def _regions(diagram: PlanarDiagram) -> dict[int, int]:
    """Merge diagram faces across the band of every crossing."""
    faces = UnionFind(range(len(diagram.faces)))
    for x in range(diagram.crossing_count):
        first, second = (0, 2) if diagram.over_forward[x] else (1, 3)
        faces.union(diagram.face_of[(x, first)], diagram.face_of[(x, second)])
    return {face: min(group) for group in faces.to_sets() for face in group}
