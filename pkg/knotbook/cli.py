"""Command line front end."""
from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Final

import colorlog
import voluptuous as vol

from .arcpres import arc_presentation, format_report
from .braidcore import (
    ArtinWord,
    BklWord,
    bkl_to_artin,
    cable_word,
    format_artin_word,
    format_bkl_word,
    parse_artin_word,
    parse_bkl_word,
    torus_knot_braid_word,
    writhe,
)
from .config_schema import NON_NEGATIVE_INT, POSITIVE_INT, load_config, resolve_memo_size
from .const import (
    _LOGGER,
    DOMAIN,
    EXIT_DOMAIN_ERROR,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    Config,
    EngineType,
    SurveyFormat,
    Verdict,
)
from .exceptions import KnotbookDomainError, KnotbookParseError
from .homfly import (
    cable_gc_lower_bound,
    cable_genus,
    create_engine,
    gc_lower_bound,
    homfly_vz,
    iter_survey,
)
from .homfly_engine import HomflyEngine
from .plumb import Merger, enumerate_mergers, format_merger, parse_merger, plumb_words
from .polyring import canonical_text, parse_polynomial
from .rampichini import (
    RampichiniDiagram,
    extract_word,
    format_diagram,
    parse_diagram,
    parse_signs,
    plumb_diagrams,
    translate,
    validate,
    with_signs,
)
from .seifert import canonical_genus, parse_pd, seifert_circles
from .util import read_source, sw_version

HANDLER_NAME: Final = f"{DOMAIN}.cli"
LOG_FORMAT: Final = "%(log_color)s%(levelname)-8s%(reset)s %(name)s: %(message)s"


@dataclass(frozen=True)
class Invocation:
    """What was asked for: subcommand, flags and where the input came from."""

    subcommand: str
    flags: dict[str, Any] = field(default_factory=dict)
    source: str | None = None


@dataclass
class Context:
    """Settings resolved from flags, the config file and the environment."""

    config: dict[str, Any]
    engine_type: EngineType = EngineType.HECKE
    memo_size: int | None = None
    exit_code: int = EXIT_OK
    _engine: HomflyEngine | None = None

    @property
    def engine(self) -> HomflyEngine:
        """Return the selected engine, created on first use."""
        if self._engine is None:
            self._engine = create_engine(self.engine_type, self.memo_size)
        return self._engine


def main() -> None:
    """Console script entry point."""
    raise SystemExit(run(sys.argv[1:]))


def run(argv: Sequence[str]) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (None, 0) else EXIT_PARSE_ERROR

    try:
        config = load_config(Path(args.config) if args.config else None)
        setup_logging(config, verbose=args.verbose, quiet=args.quiet)

        action = getattr(args, "action", None)
        invocation = Invocation(
            f"{args.command} {action}" if action else args.command,
            {k: v for k, v in vars(args).items() if k not in ("handler", "input")},
            getattr(args, "input", None),
        )
        _LOGGER.debug("cli; invocation=%s", invocation)

        engine_config = config[str(Config.ENGINE)]
        context = Context(
            config,
            engine_type=EngineType(
                getattr(args, "engine", None) or engine_config[str(Config.TYPE)]
            ),
            memo_size=resolve_memo_size(config),
        )
        output = args.handler(args, context)
    except KnotbookParseError as exc:
        _error(exc)
        return EXIT_PARSE_ERROR
    except KnotbookDomainError as exc:
        _error(exc)
        return EXIT_DOMAIN_ERROR

    if output:
        sys.stdout.write(output if output.endswith("\n") else output + "\n")
    return context.exit_code


def build_parser() -> argparse.ArgumentParser:
    """Build the argument parser with one sub-parser per command."""
    parser = argparse.ArgumentParser(
        prog=DOMAIN, description="Braids, HOMFLY-PT bounds and braided open books."
    )
    parser.add_argument("--config", metavar="PATH", help="YAML configuration file")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings only")
    parser.add_argument("--version", action="version", version=f"%(prog)s {sw_version()}")
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("torus-braid", help="braid word of T(p,q)")
    _add_ints(cmd, "p", "q")
    cmd.set_defaults(handler=_torus_braid)

    cmd = commands.add_parser("cable", help="braid word of the (k,l)-cable of T(p,q)")
    _add_ints(cmd, "p", "q", "k")
    cmd.add_argument("l", type=int)
    cmd.add_argument("--summary", action="store_true", help="add genus, bound and verdict")
    _add_engine(cmd)
    cmd.set_defaults(handler=_cable)

    for name, handler, text in (
        ("writhe", _writhe, "sum of letter signs"),
        ("homfly", _homfly, "HOMFLY-PT polynomial of the closure"),
        ("gc-bound", _gc_bound, "canonical genus lower bound of a knot"),
        ("bkl-expand", _bkl_expand, "expand a band word into Artin letters"),
        ("poly", _poly, "normalize a polynomial in v and z"),
    ):
        cmd = commands.add_parser(name, help=text)
        cmd.add_argument("input", help="inline value or @path")
        if name in ("homfly", "gc-bound"):
            _add_engine(cmd)
        cmd.set_defaults(handler=handler)

    cmd = commands.add_parser("survey", help="bound versus genus for cables of T(2,2n+1)")
    cmd.add_argument("max_n", type=int)
    cmd.add_argument(
        "--format", type=SurveyFormat, choices=list(SurveyFormat), default=SurveyFormat.TSV
    )
    _add_engine(cmd)
    cmd.set_defaults(handler=_survey)

    cmd = commands.add_parser("plumb-word", help="braided plumbing of two band words")
    for flag in ("--b1", "--b2"):
        cmd.add_argument(flag, required=True, help="band word, inline or @path")
    for flag in ("--n1", "--n2"):
        cmd.add_argument(flag, type=int, required=True, help="strand count")
    cmd.add_argument("--merger", help="'f=<images> sizes=(l1,l2)'; identity if omitted")
    cmd.set_defaults(handler=_plumb_word)

    cmd = commands.add_parser("mergers", help="list every merger of the given sizes")
    _add_ints(cmd, "l1", "l2")
    cmd.set_defaults(handler=_mergers)

    ramp = commands.add_parser("ramp", help="Rampichini diagrams").add_subparsers(
        dest="action", required=True
    )
    cmd = ramp.add_parser("validate", help="check every rule")
    cmd.add_argument("input", help="diagram file")
    cmd.set_defaults(handler=_ramp_validate)
    for name, handler in (("extract", _ramp_extract), ("translate", _ramp_translate)):
        cmd = ramp.add_parser(name)
        cmd.add_argument("input", help="diagram file")
        cmd.add_argument("--cut", type=int, default=0)
        cmd.set_defaults(handler=handler)
    cmd = ramp.add_parser("plumb", help="glue two diagrams along a merger")
    cmd.add_argument("input", help="first diagram file")
    cmd.add_argument("second", help="second diagram file")
    cmd.add_argument("--merger", help="'f=<images> sizes=(l1,l2)'; identity if omitted")
    cmd.set_defaults(handler=_ramp_plumb)
    cmd = ramp.add_parser("signs", help="replace the crossing signs of the start entries")
    cmd.add_argument("input", help="diagram file")
    cmd.add_argument("signs", help="one '+' or '-' per start entry, bottom up")
    cmd.set_defaults(handler=_ramp_signs)

    seifert = commands.add_parser("seifert", help="Seifert's algorithm on a PD code")
    seifert.add_argument("action", choices=("circles", "genus"))
    seifert.add_argument("input", help="PD code, inline or @path")
    seifert.set_defaults(handler=_seifert)

    cmd = commands.add_parser("arcpres", help="arc presentation data of a PD code")
    cmd.add_argument("input", help="PD code, inline or @path")
    cmd.add_argument("--seed", type=int)
    cmd.add_argument("--max-vertices", type=int)
    cmd.set_defaults(handler=_arcpres)

    return parser


def setup_logging(
    config: dict[str, Any], *, verbose: bool = False, quiet: bool = False
) -> None:
    """Install a colored stderr handler on the package logger."""
    settings = config.get(str(Config.LOGGER), {})
    level = settings.get(str(Config.DEFAULT), "warning")
    if verbose:
        level = "debug"
    elif quiet:
        level = "warning"

    logger = logging.getLogger(DOMAIN)
    for handler in list(logger.handlers):
        if handler.get_name() == HANDLER_NAME:
            logger.removeHandler(handler)

    handler = colorlog.StreamHandler(sys.stderr)
    handler.set_name(HANDLER_NAME)
    handler.setFormatter(colorlog.ColoredFormatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(level.upper())

    for name, name_level in settings.get(str(Config.LOGS), {}).items():
        logging.getLogger(name).setLevel(name_level.upper())


# #### Commands ####


def _torus_braid(args: argparse.Namespace, context: Context) -> str:
    return format_artin_word(torus_knot_braid_word(args.p, args.q))


def _cable(args: argparse.Namespace, context: Context) -> str:
    word = cable_word(torus_knot_braid_word(args.p, args.q), args.k, args.l)
    if not args.summary:
        return format_artin_word(word)

    genus = cable_genus(args.p, args.q, args.k, args.l)
    bound = cable_gc_lower_bound(args.p, args.q, args.k, args.l, context.engine)
    verdict = Verdict.NOT_CANONICALLY_FIBERED if bound > genus else Verdict.INCONCLUSIVE
    return "\n".join(
        (
            format_artin_word(word),
            f"genus: {genus}",
            f"gc lower bound: {bound}",
            f"verdict: {verdict}",
        )
    )


def _writhe(args: argparse.Namespace, context: Context) -> str:
    return str(writhe(_read_word(args.input)))


def _homfly(args: argparse.Namespace, context: Context) -> str:
    return canonical_text(homfly_vz(_artin(_read_word(args.input)), context.engine))


def _gc_bound(args: argparse.Namespace, context: Context) -> str:
    return str(gc_lower_bound(_artin(_read_word(args.input)), context.engine))


def _bkl_expand(args: argparse.Namespace, context: Context) -> str:
    text, _ = read_source(args.input)
    return format_artin_word(bkl_to_artin(parse_bkl_word(text, infer=True)))


def _poly(args: argparse.Namespace, context: Context) -> str:
    text, _ = read_source(args.input)
    return canonical_text(parse_polynomial(text))


def _survey(args: argparse.Namespace, context: Context) -> str:
    max_n = _coerce(POSITIVE_INT, args.max_n, "max_n")
    lines = []
    for row in iter_survey(max_n, context.engine):
        lines.append(row.to_tsv() if args.format is SurveyFormat.TSV else row.to_text())
        if row.error is not None:
            context.exit_code = EXIT_DOMAIN_ERROR
    return "\n".join(lines)


def _plumb_word(args: argparse.Namespace, context: Context) -> str:
    b1 = parse_bkl_word(read_source(args.b1)[0], strands=args.n1)
    b2 = parse_bkl_word(read_source(args.b2)[0], strands=args.n2)
    merger = _merger(args.merger, len(b1), len(b2))
    return format_bkl_word(plumb_words(b1, b2, merger))


def _mergers(args: argparse.Namespace, context: Context) -> str:
    l1 = _coerce(NON_NEGATIVE_INT, args.l1, "l1")
    l2 = _coerce(NON_NEGATIVE_INT, args.l2, "l2")
    return "\n".join(format_merger(merger) for merger in enumerate_mergers(l1, l2))


def _ramp_validate(args: argparse.Namespace, context: Context) -> str:
    report = validate(_read_diagram(args.input))
    if report:
        return "valid"
    context.exit_code = EXIT_DOMAIN_ERROR
    return "\n".join(["invalid"] + [str(violation) for violation in report.violations])


def _ramp_extract(args: argparse.Namespace, context: Context) -> str:
    return format_bkl_word(extract_word(_read_diagram(args.input), args.cut))


def _ramp_translate(args: argparse.Namespace, context: Context) -> str:
    return format_diagram(translate(_read_diagram(args.input), args.cut))


def _ramp_plumb(args: argparse.Namespace, context: Context) -> str:
    first, second = _read_diagram(args.input), _read_diagram(args.second)
    merger = _merger(args.merger, len(first.start), len(second.start))
    return format_diagram(plumb_diagrams(first, second, merger))


def _ramp_signs(args: argparse.Namespace, context: Context) -> str:
    diagram = _read_diagram(args.input)
    return format_diagram(with_signs(diagram, parse_signs(args.signs)))


def _seifert(args: argparse.Namespace, context: Context) -> str:
    diagram = parse_pd(read_source(args.input)[0])
    if args.action == "circles":
        return str(seifert_circles(diagram).count)
    return str(canonical_genus(diagram))


def _arcpres(args: argparse.Namespace, context: Context) -> str:
    settings = context.config[str(Config.ARCPRES)]
    seed = settings[str(Config.SEED)] if args.seed is None else args.seed
    limit = (
        settings[str(Config.MAX_VERTICES)] if args.max_vertices is None else args.max_vertices
    )
    diagram = parse_pd(read_source(args.input)[0])
    return format_report(
        arc_presentation(diagram, seed, _coerce(POSITIVE_INT, limit, "max-vertices"))
    )


# #### Internal functions ####


def _add_ints(parser: argparse.ArgumentParser, *names: str) -> None:
    for name in names:
        parser.add_argument(name, type=int)


def _add_engine(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--engine", type=EngineType, choices=list(EngineType))


def _coerce(schema: vol.All, value: Any, name: str) -> Any:
    try:
        return schema(value)
    except vol.Invalid as exc:
        raise KnotbookDomainError(f"Invalid {name} '{value}': {exc}") from exc


def _read_word(value: str) -> ArtinWord | BklWord:
    """Parse an Artin word, or a band word when it contains 'a(' or 'A('."""
    text, _ = read_source(value)
    if "(" in text:
        return parse_bkl_word(text, infer=True)
    return parse_artin_word(text, infer=True)


def _artin(word: ArtinWord | BklWord) -> ArtinWord:
    return bkl_to_artin(word) if isinstance(word, BklWord) else word


def _read_diagram(path: str) -> RampichiniDiagram:
    text, _ = read_source(path if path.startswith("@") else f"@{path}")
    return parse_diagram(text)


def _merger(text: str | None, l1: int, l2: int) -> Merger:
    if text is None:
        return Merger.identity(l1, l2)
    merger = parse_merger(read_source(text)[0])
    if merger.sizes != (l1, l2):
        raise KnotbookDomainError(
            f"Merger sizes {merger.sizes} do not match inputs of lengths ({l1}, {l2})"
        )
    return merger


def _error(exc: Exception) -> None:
    _LOGGER.debug("cli; failed", exc_info=exc)
    sys.stderr.write(f"{DOMAIN}: error: {exc}\n")
