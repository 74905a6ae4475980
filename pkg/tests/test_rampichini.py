"""Tests for Rampichini diagrams."""
from __future__ import annotations

from itertools import islice

import pytest

from knotbook.braidcore import parse_bkl_word
from knotbook.const import Direction, Over, Rule
from knotbook.exceptions import InvalidDiagramError, KnotbookDomainError, KnotbookParseError
from knotbook.fixtures import (
    CONNECTED_SUM_WORD,
    FOUR_STRAND_CUTS,
    FOUR_STRAND_WORDS,
    INTERLEAVED_MAP,
    INTERLEAVED_SWAPPED_MAP,
    INTERLEAVED_SWAPPED_WORD,
    INTERLEAVED_WORD,
    SUMMAND_WORDS,
    THREE_STRAND_CUT,
    THREE_STRAND_WORD,
    four_strand_diagram,
    hopf_diagram,
    plumbing_summands,
    three_strand_diagram,
    twisted_band_diagram,
    unbook_diagram,
)
from knotbook.plumb import Merger, enumerate_mergers, plumb_words
from knotbook.rampichini import (
    Cross,
    Entry,
    RampichiniDiagram,
    Wrap,
    apply_event,
    conjugate_label,
    entry_components,
    extract_word,
    format_diagram,
    glue_diagrams,
    parse_diagram,
    parse_signs,
    plumb_diagrams,
    relabel,
    replay,
    shift_label,
    shift_state,
    translate,
    validate,
    with_signs,
)

FIXTURES = [
    hopf_diagram,
    unbook_diagram,
    four_strand_diagram,
    three_strand_diagram,
    lambda: twisted_band_diagram(3),
    lambda: twisted_band_diagram(2, -1),
    lambda: plumbing_summands()[0],
    lambda: plumbing_summands()[1],
]

# summands whose strands all rise
RISING = [
    hopf_diagram,
    three_strand_diagram,
    lambda: twisted_band_diagram(2),
    lambda: twisted_band_diagram(3),
    lambda: plumbing_summands()[0],
    lambda: plumbing_summands()[1],
]


def random_summand(rng) -> RampichiniDiagram:
    """Return a random translate and relabel of a rising fixture with random curve signs."""
    diagram = rng.choice(RISING)()
    diagram = translate(diagram, rng.randrange(len(diagram.events) + 1))
    diagram = relabel(diagram, rng.randrange(diagram.n))
    components = entry_components(diagram)
    flips = {component: rng.choice((1, -1)) for component in set(components)}
    return with_signs(diagram, [flips[component] for component in components])


def rules(diagram: RampichiniDiagram) -> set[Rule]:
    return {violation.rule for violation in validate(diagram).violations}


def test_label_arithmetic():
    assert conjugate_label((1, 2), (2, 3)) == (1, 3)
    assert conjugate_label((1, 2), (3, 4)) == (1, 2)
    assert shift_label((2, 3), 1, 3) == (1, 3)
    assert shift_label((1, 2), -1, 3) == (1, 3)


def test_apply_event():
    state = (Entry(1, 2), Entry(2, 3))
    assert apply_event(state, Cross(1, Over.UPPER)) == (Entry(2, 3), Entry(1, 3))
    assert apply_event(state, Cross(1, Over.LOWER)) == (Entry(1, 3), Entry(1, 2))
    assert apply_event(state, Wrap(Direction.UP)) == (Entry(2, 3), Entry(1, 2))
    with pytest.raises(KnotbookDomainError):
        apply_event(state, Wrap(Direction.DOWN))
    with pytest.raises(KnotbookDomainError):
        apply_event(state, Cross(2))


@pytest.mark.parametrize("make", FIXTURES)
def test_fixtures_validate(make):
    report = validate(make())
    assert report, report.violations


def test_four_strand_cuts():
    diagram = four_strand_diagram()
    for cut, word in zip(FOUR_STRAND_CUTS, FOUR_STRAND_WORDS):
        assert extract_word(diagram, cut) == parse_bkl_word(word, strands=4), cut


def test_three_strand_cut():
    word = extract_word(three_strand_diagram(), THREE_STRAND_CUT)
    assert word == parse_bkl_word(THREE_STRAND_WORD, strands=3)


def test_summands_read_their_words():
    for diagram, word in zip(plumbing_summands(), SUMMAND_WORDS):
        assert extract_word(diagram, 0) == parse_bkl_word(word, strands=3)


@pytest.mark.parametrize("make", FIXTURES)
def test_translate_keeps_validity(make):
    diagram = make()
    for k in range(len(diagram.events) + 1):
        translated = translate(diagram, k)
        assert validate(translated), k
        assert extract_word(translated, 0) == extract_word(diagram, k)
    assert translate(diagram, len(diagram.events)) == relabel(diagram, 1)


def test_replay_returns_every_prefix():
    diagram = four_strand_diagram()
    states = replay(diagram)
    assert len(states) == len(diagram.events) + 1
    assert states[0] == diagram.start


def test_wrap_count_violation():
    diagram = RampichiniDiagram(2, (Entry(1, 2),))
    assert Rule.WRAP_COUNT in rules(diagram)


def test_wrap_direction_violation():
    diagram = RampichiniDiagram(2, (Entry(1, 2, 1, Direction.UP),), (Wrap(Direction.DOWN),))
    assert Rule.WRAP_DIRECTION in rules(diagram)


def test_other_violations():
    assert Rule.LABEL_RANGE in rules(RampichiniDiagram(2, (Entry(1, 3),), (Wrap(),)))
    assert Rule.CROSS_POSITION in rules(RampichiniDiagram(2, (Entry(1, 2),), (Cross(5),)))
    diverging = RampichiniDiagram(
        2,
        (Entry(1, 2, 1, Direction.DOWN), Entry(1, 2, 1, Direction.UP)),
        (Cross(1), Wrap()),
    )
    assert Rule.MONOTONE in rules(diverging)


def test_extract_rejects_invalid_diagrams():
    with pytest.raises(InvalidDiagramError) as err:
        extract_word(RampichiniDiagram(2, (Entry(1, 2),)), 0)
    assert err.value.violations
    with pytest.raises(KnotbookDomainError):
        extract_word(hopf_diagram(), 2)
    with pytest.raises(KnotbookDomainError):
        translate(hopf_diagram(), -1)


@pytest.mark.parametrize("signs", [[1, -1, 1], [-1, 1, -1], [-1, -1, -1]])
def test_with_signs(signs):
    diagram = with_signs(four_strand_diagram(), signs)
    assert [entry.sign for entry in diagram.start] == signs
    assert diagram.events == four_strand_diagram().events
    assert validate(diagram)


@pytest.mark.parametrize(
    ("make", "signs"),
    [
        (four_strand_diagram, [1, 1, -1]),
        (lambda: twisted_band_diagram(2), [1, -1]),
        (hopf_diagram, [1, 1]),
        (hopf_diagram, [0]),
    ],
)
def test_with_signs_rejects_bad_vectors(make, signs):
    with pytest.raises(KnotbookDomainError):
        with_signs(make(), signs)


def test_with_signs_names_the_shared_curve():
    with pytest.raises(KnotbookDomainError, match="entry 0 on the same curve"):
        with_signs(four_strand_diagram(), [1, 1, -1])


def test_entry_components():
    assert entry_components(hopf_diagram()) == [0]
    assert entry_components(twisted_band_diagram(3)) == [0, 0, 0]
    assert entry_components(four_strand_diagram()) == [0, 1, 0]
    assert entry_components(unbook_diagram()) == []


def test_parse_signs():
    assert parse_signs("+ - +") == (1, -1, 1)
    assert parse_signs("-+") == (-1, 1)
    with pytest.raises(KnotbookParseError):
        parse_signs(" ")
    with pytest.raises(KnotbookParseError, match="at 2"):
        parse_signs("+x")


def test_format_diagram():
    assert format_diagram(hopf_diagram()) == "n 2\nentry 1 2 + up\nwrap up\n"


@pytest.mark.parametrize("make", FIXTURES)
def test_parse_reads_formatted_diagrams(make):
    diagram = make()
    assert parse_diagram(format_diagram(diagram)) == diagram


def test_parse_diagram_comments_and_blank_lines():
    text = "# positive Hopf band\nn 2\n\nentry 1 2 + up  # the only arc\nwrap up\n"
    assert parse_diagram(text) == hopf_diagram()


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("n 2\nentry 1 2 * up\n", 2),
        ("n 2\nentry 1 2 + sideways\n", 2),
        ("n 2\nentry 1 2 + up\nwrap up\nbogus\n", 4),
        ("n 2\nentry 1 2 + up\ncross x upper\n", 3),
        ("n 2\nn 3\n", 2),
        ("entry 1 2 + up\n", 1),
        ("n 2\nwrap up\nentry 1 2 + up\n", 3),
    ],
)
def test_parse_diagram_errors(text, line):
    with pytest.raises(KnotbookParseError) as err:
        parse_diagram(text)
    assert err.value.position == line


def test_parse_diagram_requires_strand_line():
    with pytest.raises(KnotbookParseError):
        parse_diagram("# nothing here\n")
    with pytest.raises(KnotbookParseError):
        parse_diagram("n 0\n")


@pytest.mark.parametrize(
    ("merger_map", "expected"),
    [
        (tuple(range(1, 9)), CONNECTED_SUM_WORD),
        (INTERLEAVED_MAP, INTERLEAVED_WORD),
        (INTERLEAVED_SWAPPED_MAP, INTERLEAVED_SWAPPED_WORD),
    ],
)
def test_plumb_diagrams_reads_plumbed_word(merger_map, expected):
    first, second = plumbing_summands()
    plumbed = plumb_diagrams(first, second, Merger(merger_map, (4, 4)))
    assert validate(plumbed)
    assert plumbed.n == 5
    assert extract_word(plumbed, 0) == parse_bkl_word(expected, strands=5)


def test_glue_seam_splits_summand_events():
    first, second = plumbing_summands()
    glued = glue_diagrams(first, second, Merger.identity(4, 4))
    assert len(first.events) <= glued.seam <= len(glued.diagram.events)
    assert glued.diagram.wrap_count == first.wrap_count + second.wrap_count


def test_glue_hopf_bands():
    glued = glue_diagrams(hopf_diagram(), hopf_diagram(), Merger((2, 1), (1, 1)))
    assert glued.diagram.events == (
        Wrap(Direction.UP),
        Cross(1, Over.LOWER),
        Cross(1, Over.LOWER),
        Wrap(Direction.UP),
    )
    assert extract_word(glued.diagram, 0) == parse_bkl_word("a(2,3) a(1,2)", strands=3)


@pytest.mark.parametrize(
    ("first", "second"),
    [
        (lambda: twisted_band_diagram(2), lambda: twisted_band_diagram(1, -1)),
        (lambda: twisted_band_diagram(1), three_strand_diagram),
        (three_strand_diagram, lambda: twisted_band_diagram(2, -1)),
        (lambda: plumbing_summands()[1], hopf_diagram),
    ],
)
def test_glue_agrees_with_plumb_words(first, second):
    first, second = first(), second()
    mergers = enumerate_mergers(len(first.start), len(second.start))
    for merger in islice(mergers, 20):
        plumbed = plumb_diagrams(first, second, merger)
        assert validate(plumbed), merger
        assert extract_word(plumbed, 0) == plumb_words(
            extract_word(first, 0), extract_word(second, 0), merger
        )


def test_plumb_diagrams_on_random_summands(rng):
    for _ in range(50):
        first, second = random_summand(rng), random_summand(rng)
        merger = rng.choice(enumerate_mergers(len(first.start), len(second.start)))
        plumbed = plumb_diagrams(first, second, merger)
        assert validate(plumbed), (first, second, merger)
        assert plumbed.n == first.n + second.n - 1
        assert plumbed.wrap_count == first.wrap_count + second.wrap_count
        assert extract_word(plumbed, 0) == plumb_words(
            extract_word(first, 0), extract_word(second, 0), merger
        )


def test_glue_seam_conjugates_second_summand(rng):
    for _ in range(20):
        first, second = random_summand(rng), random_summand(rng)
        merger = rng.choice(enumerate_mergers(len(first.start), len(second.start)))
        glued = glue_diagrams(first, second, merger)
        n1 = first.n

        # first summand arcs have gone once around; second summand arcs passed under
        # them, so the point n1 of their shifted labels now reads 1
        firsts = iter(shift_state(first.start, 1, n1))
        seconds = iter(shift_state(second.start, n1 - 1, glued.diagram.n))
        expected = []
        for index in merger.inverse():
            if index <= len(first.start):
                expected.append(next(firsts))
            else:
                entry = next(seconds)
                label = tuple(sorted(1 if x == n1 else x for x in entry.label))
                expected.append(entry.with_label(label))

        assert replay(glued.diagram)[glued.seam] == tuple(expected)


def test_glue_rejects_bad_input():
    with pytest.raises(KnotbookDomainError):
        glue_diagrams(hopf_diagram(), hopf_diagram(), Merger.identity(2, 1))
    with pytest.raises(KnotbookDomainError):
        glue_diagrams(unbook_diagram(), hopf_diagram(), Merger.identity(0, 1))
    with pytest.raises(InvalidDiagramError):
        glue_diagrams(RampichiniDiagram(2, (Entry(1, 2),)), hopf_diagram(), Merger.identity(1, 1))
