"""Rampichini diagrams: labeled link diagrams on the torus as event sequences.

A diagram is read along a vertical cut circle. The start state lists the arcs met by
the cut from bottom to top, each with a transposition label, a crossing sign and the
vertical direction of its strand. Moving the cut to the right, two things can happen:
adjacent arcs cross (the under arc's label is conjugated by the over arc's label), or
an arc leaves through the top edge and comes back at the bottom (or the reverse).
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from networkx.utils import UnionFind

from .braidcore import BandLetter, BklWord, Permutation, product
from .const import _LOGGER, Direction, Over, Rule
from .exceptions import (
    InconsistentResultError,
    InvalidDiagramError,
    KnotbookDomainError,
    KnotbookParseError,
)
from .plumb import Merger
from .util import parse_int

Label = tuple[int, int]


class Entry(NamedTuple):
    """Arc met by the cut: label (i j) with i < j, crossing sign, strand direction."""

    i: int
    j: int
    sign: int = 1
    direction: Direction = Direction.UP

    @property
    def label(self) -> Label:
        """Return the transposition as a sorted pair."""
        return (self.i, self.j)

    def with_label(self, label: Label) -> Entry:
        """Return a copy carrying another label."""
        i, j = sorted(label)
        return self._replace(i=i, j=j)

    def letter(self) -> BandLetter:
        """Return the band generator read off this arc."""
        return BandLetter(self.i, self.j, self.sign)

    def __str__(self) -> str:
        return f"({self.i} {self.j}){'+' if self.sign > 0 else '-'}{self.direction}"


class Cross(NamedTuple):
    """Arcs at positions p and p+1 (1-based, bottom up) cross."""

    position: int
    over: Over = Over.UPPER


class Wrap(NamedTuple):
    """Direction UP moves the top arc to the bottom; DOWN the reverse."""

    direction: Direction = Direction.UP


Event = Cross | Wrap
State = tuple[Entry, ...]


class Violation(NamedTuple):
    """A failed rule, with the event index where it was detected."""

    rule: Rule
    event_index: int | None
    message: str

    def __str__(self) -> str:
        where = "" if self.event_index is None else f" at event {self.event_index}"
        return f"{self.rule}{where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validating a diagram."""

    valid: bool
    violations: tuple[Violation, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.valid


@dataclass(frozen=True)
class RampichiniDiagram:
    """Strand parameter n, start state and event sequence."""

    n: int
    start: State
    events: tuple[Event, ...] = ()

    def __post_init__(self) -> None:
        """Normalize sequences to tuples."""
        if self.n < 1:
            raise KnotbookDomainError(f"Strand parameter must be positive: {self.n}")
        object.__setattr__(self, "start", tuple(_normalize_entry(e) for e in self.start))
        object.__setattr__(
            self, "events", tuple(_normalize_event(e) for e in self.events)
        )

    @property
    def wrap_count(self) -> int:
        """Return the number of Wrap events."""
        return sum(isinstance(event, Wrap) for event in self.events)


# #### Label arithmetic ####


def conjugate_label(label: Label, by: Label) -> Label:
    """Return s t s for transpositions t = label and s = by."""
    a, b = by

    def swap(x: int) -> int:
        return b if x == a else a if x == b else x

    i, j = label
    return tuple(sorted((swap(i), swap(j))))  # type: ignore[return-value]


def shift_label(label: Label, k: int, n: int) -> Label:
    """Add k to both points modulo n, values in 1..n."""
    i, j = label
    return tuple(sorted(((i - 1 + k) % n + 1, (j - 1 + k) % n + 1)))  # type: ignore[return-value]


def shift_state(state: Sequence[Entry], k: int, n: int) -> State:
    """Shift every label in a state."""
    return tuple(e.with_label(shift_label(e.label, k, n)) for e in state)


# #### Replay ####


def apply_event(state: Sequence[Entry], event: Event) -> State:
    """Apply one event, raising KnotbookDomainError if it cannot happen."""
    entries = list(state)
    match event:
        case Cross(position=p, over=over):
            if not 1 <= p < len(entries):
                raise KnotbookDomainError(
                    f"Cross position {p} out of range for {len(entries)} arcs"
                )
            lower, upper = entries[p - 1], entries[p]
            if over is Over.UPPER:
                lower = lower.with_label(conjugate_label(lower.label, upper.label))
            else:
                upper = upper.with_label(conjugate_label(upper.label, lower.label))
            entries[p - 1], entries[p] = upper, lower
        case Wrap(direction=direction):
            if not entries:
                raise KnotbookDomainError("Wrap on an empty state")
            moved = entries[-1] if direction is Direction.UP else entries[0]
            if moved.direction is not direction:
                raise KnotbookDomainError(
                    f"Wrap {direction} moves arc {moved} whose direction is {moved.direction}"
                )
            reorder(entries, event)
        case _:
            raise TypeError(f"Invalid event: {event}")
    return tuple(entries)


def reorder(items: list, event: Event) -> None:
    """Permute a list the way an event permutes arcs."""
    match event:
        case Cross(position=p):
            items[p - 1], items[p] = items[p], items[p - 1]
        case Wrap(direction=Direction.UP):
            items.insert(0, items.pop())
        case Wrap(direction=Direction.DOWN):
            items.append(items.pop(0))


def replay(diagram: RampichiniDiagram) -> list[State]:
    """Return the state after each prefix of the events, the start included."""
    states = [diagram.start]
    for index, event in enumerate(diagram.events):
        try:
            states.append(apply_event(states[-1], event))
        except KnotbookDomainError as exc:
            raise KnotbookDomainError(f"Event {index}: {exc}") from exc
    return states


def validate(diagram: RampichiniDiagram) -> ValidationReport:
    """Check every rule of the definition under replay."""
    n = diagram.n
    violations: list[Violation] = []

    for index, entry in enumerate(diagram.start):
        if not 1 <= entry.i < entry.j <= n:
            violations.append(
                Violation(
                    Rule.LABEL_RANGE, None, f"entry {index} label {entry.label} not in 1..{n}"
                )
            )
        if entry.sign not in (1, -1):
            violations.append(
                Violation(Rule.LABEL_RANGE, None, f"entry {index} sign {entry.sign}")
            )

    state = diagram.start
    wrap_labels: list[Label] = []
    replayed = True
    for index, event in enumerate(diagram.events):
        if isinstance(event, Cross) and 1 <= event.position < len(state):
            lower, upper = state[event.position - 1], state[event.position]
            if lower.direction is Direction.DOWN and upper.direction is Direction.UP:
                violations.append(
                    Violation(Rule.MONOTONE, index, f"arcs {lower} and {upper} diverge")
                )
        if isinstance(event, Wrap) and state:
            moved = state[-1] if event.direction is Direction.UP else state[0]
            wrap_labels.append(moved.label)
        try:
            state = apply_event(state, event)
        except KnotbookDomainError as exc:
            rule = Rule.CROSS_POSITION if isinstance(event, Cross) else Rule.WRAP_DIRECTION
            violations.append(Violation(rule, index, str(exc)))
            replayed = False
            break

    if diagram.wrap_count != n - 1:
        violations.append(
            Violation(
                Rule.WRAP_COUNT, None, f"{diagram.wrap_count} wraps, expected {n - 1}"
            )
        )

    if replayed:
        expected = shift_state(diagram.start, 1, n)
        if state != expected:
            violations.append(
                Violation(
                    Rule.SHIFTED_RETURN,
                    len(diagram.events),
                    f"final state {_render(state)} is not the shifted start {_render(expected)}",
                )
            )
        if all(v.rule is not Rule.LABEL_RANGE for v in violations):
            bottom = _wrap_product(wrap_labels, n)
            if bottom != Permutation.cycle(n):
                violations.append(
                    Violation(
                        Rule.BOTTOM_PRODUCT, None, f"wrap labels multiply to {bottom}"
                    )
                )

    if violations:
        _LOGGER.debug("rampichini; n=%s; %s violations", n, len(violations))
    return ValidationReport(not violations, tuple(violations))


def require_valid(diagram: RampichiniDiagram, what: str = "diagram") -> None:
    """Raise InvalidDiagramError unless the diagram validates."""
    report = validate(diagram)
    if not report:
        raise InvalidDiagramError(f"Invalid {what}", report.violations)


# #### Words and translation ####


def extract_word(diagram: RampichiniDiagram, cut: int) -> BklWord:
    """Read the band word along the cut after the given number of events."""
    require_valid(diagram)
    if not 0 <= cut <= len(diagram.events):
        raise KnotbookDomainError(
            f"Cut {cut} out of range 0..{len(diagram.events)}"
        )
    state = replay(diagram)[cut]
    return BklWord(tuple(entry.letter() for entry in state), diagram.n)


def translate(diagram: RampichiniDiagram, k: int) -> RampichiniDiagram:
    """Move the cut k events to the right and rotate the event list."""
    require_valid(diagram)
    if not 0 <= k <= len(diagram.events):
        raise KnotbookDomainError(
            f"Translation {k} out of range 0..{len(diagram.events)}"
        )
    events = diagram.events
    return RampichiniDiagram(diagram.n, replay(diagram)[k], events[k:] + events[:k])


def relabel(diagram: RampichiniDiagram, k: int) -> RampichiniDiagram:
    """Shift every label by k modulo n."""
    return RampichiniDiagram(
        diagram.n, shift_state(diagram.start, k, diagram.n), diagram.events
    )


def entry_components(diagram: RampichiniDiagram) -> list[int]:
    """Return a component id per start entry, smallest start index of its curve."""
    order = list(range(len(diagram.start)))
    for event in diagram.events:
        reorder(order, event)

    # the arc leaving at final position p re-enters at start position p
    components = UnionFind(range(len(order)))
    for position, origin in enumerate(order):
        components.union(origin, position)

    ids = [0] * len(order)
    for members in components.to_sets():
        for x in members:
            ids[x] = min(members)
    return ids


def with_signs(diagram: RampichiniDiagram, signs: Sequence[int]) -> RampichiniDiagram:
    """Replace the crossing signs of the start entries.

    A sign belongs to a whole curve, so entries of one component must get the same sign.
    """
    if len(signs) != len(diagram.start):
        raise KnotbookDomainError(
            f"Expected {len(diagram.start)} signs, got {len(signs)}"
        )
    if bad := [s for s in signs if s not in (1, -1)]:
        raise KnotbookDomainError(f"Signs must be +1 or -1, got {bad[0]}")

    chosen: dict[int, int] = {}
    for index, (component, sign_) in enumerate(zip(entry_components(diagram), signs)):
        if chosen.setdefault(component, sign_) != sign_:
            raise KnotbookDomainError(
                f"Entry {index} gets sign {sign_:+d} but entry {component} on the same "
                f"curve gets {chosen[component]:+d}"
            )
    return RampichiniDiagram(
        diagram.n,
        tuple(entry._replace(sign=s) for entry, s in zip(diagram.start, signs)),
        diagram.events,
    )


# #### Plumbing ####


class GluedDiagram(NamedTuple):
    """Plumbed diagram and the number of events belonging to the first summand."""

    diagram: RampichiniDiagram
    seam: int


@dataclass
class _Arc:
    entry: Entry
    origin: int


def glue_diagrams(
    first: RampichiniDiagram, second: RampichiniDiagram, merger: Merger
) -> GluedDiagram:
    """Glue two diagrams along the merger, the second shifted by n1-1."""
    require_valid(first, "first summand")
    require_valid(second, "second summand")
    n1, n2 = first.n, second.n
    l1, l2 = len(first.start), len(second.start)
    if merger.sizes != (l1, l2):
        raise KnotbookDomainError(
            f"Merger sizes {merger.sizes} do not match arc counts ({l1}, {l2})"
        )
    if n1 < 2 or n2 < 2:
        raise KnotbookDomainError(
            f"Plumbing needs strand parameters of at least 2, got ({n1}, {n2})"
        )

    total = n1 + n2 - 1
    arcs = []
    for index in merger.inverse():
        if index <= l1:
            arcs.append(_Arc(first.start[index - 1], 1))
        else:
            entry = second.start[index - l1 - 1]
            arcs.append(_Arc(entry.with_label((entry.i + n1 - 1, entry.j + n1 - 1)), 2))
    start = tuple(arc.entry for arc in arcs)

    events: list[Event] = []
    _run_phase(arcs, 1, first, events)
    seam = len(events)
    _run_phase(arcs, 2, second, events)

    glued = RampichiniDiagram(total, start, tuple(events))
    report = validate(glued)
    if not report:
        raise InconsistentResultError(
            "Glued diagram failed validation: "
            + "; ".join(str(v) for v in report.violations)
        )

    _LOGGER.debug(
        "rampichini; n=(%s, %s); merger=%s; glued with %s events, seam at %s",
        n1,
        n2,
        merger,
        len(events),
        seam,
    )
    return GluedDiagram(glued, seam)


def plumb_diagrams(
    first: RampichiniDiagram, second: RampichiniDiagram, merger: Merger
) -> RampichiniDiagram:
    """Return the diagram of the braided plumbing determined by the merger."""
    return glue_diagrams(first, second, merger).diagram


# #### Text format ####


def parse_diagram(text: str) -> RampichiniDiagram:
    """Parse the line-oriented diagram format."""
    n: int | None = None
    start: list[Entry] = []
    events: list[Event] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *args = line.split()
        match keyword:
            case "n":
                if n is not None or start or events or len(args) != 1:
                    raise KnotbookParseError("'n <int>' must come first, once", lineno)
                n = parse_int(args[0], lineno)
            case "entry":
                if n is None or events or len(args) != 4:
                    raise KnotbookParseError(
                        "'entry <i> <j> <+|-> <up|down>' must follow 'n', before events",
                        lineno,
                    )
                i, j = parse_int(args[0], lineno), parse_int(args[1], lineno)
                sign_ = _parse_sign(args[2], lineno)
                direction = _parse_enum(Direction, args[3], lineno)
                start.append(Entry(i, j, sign_, direction))
            case "cross":
                if n is None or len(args) != 2:
                    raise KnotbookParseError("Expected 'cross <p> <lower|upper>'", lineno)
                position = parse_int(args[0], lineno)
                events.append(Cross(position, _parse_enum(Over, args[1], lineno)))
            case "wrap":
                if n is None or len(args) != 1:
                    raise KnotbookParseError("Expected 'wrap <up|down>'", lineno)
                events.append(Wrap(_parse_enum(Direction, args[0], lineno)))
            case _:
                raise KnotbookParseError(f"Unknown keyword '{keyword}'", lineno)

    if n is None:
        raise KnotbookParseError("Missing 'n <int>' line")
    try:
        return RampichiniDiagram(n, tuple(start), tuple(events))
    except KnotbookDomainError as exc:
        raise KnotbookParseError(str(exc)) from exc


def parse_signs(text: str) -> tuple[int, ...]:
    """Parse a sign vector such as '+-+' or '+ - +'."""
    tokens = "".join(text.split())
    if not tokens:
        raise KnotbookParseError("Empty sign vector")
    return tuple(_parse_sign(token, index) for index, token in enumerate(tokens, start=1))


def format_diagram(diagram: RampichiniDiagram) -> str:
    """Render a diagram in the line-oriented format."""
    lines = [f"n {diagram.n}"]
    lines.extend(
        f"entry {e.i} {e.j} {'+' if e.sign > 0 else '-'} {e.direction}"
        for e in diagram.start
    )
    for event in diagram.events:
        match event:
            case Cross(position=p, over=over):
                lines.append(f"cross {p} {over}")
            case Wrap(direction=direction):
                lines.append(f"wrap {direction}")
    return "\n".join(lines) + "\n"


# #### Internal functions ####


def _normalize_entry(entry: Sequence) -> Entry:
    i, j, sign, direction = Entry(*entry)
    return Entry(i, j, sign, Direction(direction))


def _normalize_event(event: Event) -> Event:
    match event:
        case Cross(position=p, over=over):
            return Cross(p, Over(over))
        case Wrap(direction=direction):
            return Wrap(Direction(direction))
    raise TypeError(f"Invalid event: {event}")


def _render(state: Sequence[Entry]) -> str:
    return "[" + ", ".join(str(e) for e in state) + "]"


def _wrap_product(labels: Sequence[Label], n: int) -> Permutation:
    # the first wrap acts first
    perms = [Permutation.transposition(n, i, j) for i, j in labels]
    return product(reversed(perms), n)


def _run_phase(
    arcs: list[_Arc], mover: int, summand: RampichiniDiagram, events: list[Event]
) -> None:
    """Replay one summand's events while the other summand's arcs pass under it."""
    states = replay(summand)
    ell = len(summand.start)
    paths = [_gap_path(gap, ell, states, summand.events) for gap in _gaps(arcs, mover)]

    # held arcs never cross each other, so their gaps stay sorted
    slots = [sorted(path[t] for path in paths) for t in range(len(states))]

    for t, event in enumerate(summand.events):
        _settle(arcs, mover, slots[t], events)
        events.append(_mover_event(arcs, mover, event))
    _settle(arcs, mover, slots[-1], events)


def _gaps(arcs: Sequence[_Arc], mover: int) -> list[int]:
    """Return, per held arc bottom up, the number of mover arcs below it."""
    gaps = []
    below = 0
    for arc in arcs:
        if arc.origin == mover:
            below += 1
        else:
            gaps.append(below)
    return gaps


def _pass_range(gap: int, directions: Sequence[Direction]) -> tuple[int, int]:
    # a held arc slips below a rising mover, or above a falling one
    lo = gap
    while lo > 0 and directions[lo - 1] is Direction.UP:
        lo -= 1
    hi = gap
    while hi < len(directions) and directions[hi] is Direction.DOWN:
        hi += 1
    return lo, hi


def _gap_after(event: Event, gap: int, ell: int) -> int | None:
    match event:
        case Cross(position=p):
            return None if gap == p else gap
        case Wrap(direction=Direction.UP):
            return gap + 1 if gap < ell else None
        case Wrap(direction=Direction.DOWN):
            return gap - 1 if gap > 0 else None
    return None


def _gap_path(
    gap: int, ell: int, states: Sequence[State], mover_events: Sequence[Event]
) -> list[int]:
    """Return the lowest feasible gap per slot for a held arc returning to its gap."""
    m = len(mover_events)
    directions = [[entry.direction for entry in state] for state in states]

    feasible: list[set[int]] = [set() for _ in range(m + 1)]
    for x in range(ell + 1):
        lo, hi = _pass_range(x, directions[m])
        if lo <= gap <= hi:
            feasible[m].add(x)
    for t in range(m - 1, -1, -1):
        for x in range(ell + 1):
            lo, hi = _pass_range(x, directions[t])
            if any(
                _gap_after(mover_events[t], y, ell) in feasible[t + 1]
                for y in range(lo, hi + 1)
            ):
                feasible[t].add(x)

    if gap not in feasible[0]:
        raise InconsistentResultError(f"No crossing schedule for a held arc at gap {gap}")

    path = []
    x = gap
    for t, event in enumerate(mover_events):
        lo, hi = _pass_range(x, directions[t])
        y = next(y for y in range(lo, hi + 1) if _gap_after(event, y, ell) in feasible[t + 1])
        path.append(y)
        x = _gap_after(event, y, ell)  # type: ignore[assignment]
    path.append(gap)
    return path


def _apply_to_arcs(arcs: list[_Arc], event: Event) -> None:
    entries = apply_event([arc.entry for arc in arcs], event)
    reorder(arcs, event)
    for arc, entry in zip(arcs, entries):
        arc.entry = entry


def _settle(
    arcs: list[_Arc], mover: int, targets: Sequence[int], events: list[Event]
) -> None:
    """Pass held arcs under adjacent movers until every gap meets its target."""
    while True:
        step: Cross | None = None
        below = 0
        held = 0
        for index, arc in enumerate(arcs):
            if arc.origin == mover:
                below += 1
                continue
            if below > targets[held] and arcs[index - 1].origin == mover:
                step = Cross(index, Over.LOWER)
                break
            if (
                below < targets[held]
                and index + 1 < len(arcs)
                and arcs[index + 1].origin == mover
            ):
                step = Cross(index + 1, Over.UPPER)
                break
            held += 1

        if step is None:
            break
        _apply_to_arcs(arcs, step)
        events.append(step)

    if _gaps(arcs, mover) != list(targets):
        raise InconsistentResultError(
            f"Held arcs stuck at gaps {_gaps(arcs, mover)}, wanted {list(targets)}"
        )


def _mover_event(arcs: list[_Arc], mover: int, event: Event) -> Event:
    """Translate a summand event to the glued diagram and apply it."""
    match event:
        case Cross(position=p, over=over):
            positions = [index for index, arc in enumerate(arcs) if arc.origin == mover]
            lower = positions[p - 1]
            if positions[p] != lower + 1:
                raise InconsistentResultError(f"Arcs {p} and {p + 1} are not adjacent")
            glued: Event = Cross(lower + 1, over)
        case Wrap(direction=direction):
            end = arcs[-1] if direction is Direction.UP else arcs[0]
            if end.origin != mover:
                raise InconsistentResultError(f"Wrap {direction} blocked by a held arc")
            glued = event
        case _:
            raise TypeError(f"Invalid event: {event}")

    _apply_to_arcs(arcs, glued)
    return glued


def _parse_sign(token: str, lineno: int) -> int:
    match token:
        case "+":
            return 1
        case "-":
            return -1
    raise KnotbookParseError(f"Expected '+' or '-', got '{token}'", lineno)


def _parse_enum(enum_type, token: str, lineno: int):
    try:
        return enum_type(token)
    except ValueError as exc:
        choices = "|".join(enum_type)
        raise KnotbookParseError(f"Expected {choices}, got '{token}'", lineno) from exc
