"""HOMFLY-PT of braid closures, canonical genus bounds and the cable survey."""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from functools import cache

from .braidcore import ArtinWord, cable_word, torus_knot_braid_word, word_permutation
from .config_schema import env_memo_size
from .const import _LOGGER, DEFAULT_MEMO_SIZE, EngineType, Verdict
from .exceptions import (
    InconsistentResultError,
    KnotbookDomainError,
    KnotbookError,
    MultiComponentError,
)
from .hecke_engine import HeckeTraceEngine
from .homfly_engine import HomflyEngine
from .polyring import LaurentPoly2
from .skein_engine import SkeinTreeEngine


def create_engine(
    type_: EngineType | str, memo_size: int | None = DEFAULT_MEMO_SIZE
) -> HomflyEngine:
    """Create an engine of the given type."""
    match type_:
        case EngineType.HECKE:
            return HeckeTraceEngine(memo_size)
        case EngineType.SKEIN:
            return SkeinTreeEngine()

    raise TypeError(f"Invalid engine type: {type_}")


@cache
def default_engine() -> HomflyEngine:
    """Return the shared production engine, memo size taken from the environment."""
    return create_engine(EngineType.HECKE, env_memo_size())


def homfly_vz(word: ArtinWord, engine: HomflyEngine | None = None) -> LaurentPoly2:
    """Return the invariant of the closure of word."""
    return (engine or default_engine())(word)


def homfly_oracle(word: ArtinWord) -> LaurentPoly2:
    """Return the invariant by the naive skein tree (at most 14 letters)."""
    return SkeinTreeEngine()(word)


def max_z_degree(poly: LaurentPoly2) -> int:
    """Return the largest z-exponent, which may be negative."""
    if not poly:
        raise KnotbookDomainError("The zero polynomial has no z-degree")
    return max(poly.z_degrees())


def gc_lower_bound(word: ArtinWord, engine: HomflyEngine | None = None) -> int:
    """Return half the top z-degree, a lower bound for the canonical genus of a knot."""
    perm = word_permutation(word)
    if not perm.is_full_cycle():
        raise MultiComponentError(
            f"Closure has {perm.cycle_count()} components; a knot is required",
            components=perm.cycle_count(),
        )

    degree = max_z_degree(homfly_vz(word, engine))
    if degree % 2:
        raise InconsistentResultError(f"Knot polynomial has odd top z-degree {degree}")
    return degree // 2


def torus_knot_genus(p: int, q: int) -> int:
    """Return (p-1)(q-1)/2 with floor division."""
    return ((p - 1) * (q - 1)) // 2


def cable_genus(p: int, q: int, k: int, l: int) -> int:  # noqa: E741
    """Return the genus of the (k,l)-cable of T(p,q)."""
    return k * torus_knot_genus(p, q) + torus_knot_genus(k, l)


def cable_gc_lower_bound(
    p: int, q: int, k: int, l: int, engine: HomflyEngine | None = None  # noqa: E741
) -> int:
    """Return the canonical genus lower bound of the (k,l)-cable of T(p,q)."""
    return gc_lower_bound(cable_word(torus_knot_braid_word(p, q), k, l), engine)


def survey_word(n: int) -> ArtinWord:
    """Return the braid word of the (2,1)-cable of T(2,2n+1)."""
    return cable_word(torus_knot_braid_word(2, 2 * n + 1), 2, 1)


@dataclass(frozen=True)
class SurveyRow:
    """Bound versus genus for the (2,1)-cable of T(2,2n+1)."""

    n: int
    cable_word_length: int
    genus: int
    gc_lower_bound: int | None
    verdict: Verdict = field(init=False)
    error: str | None = None

    def __post_init__(self) -> None:
        """Derive the verdict from the bound."""
        fibered = self.gc_lower_bound is not None and self.gc_lower_bound > self.genus
        object.__setattr__(
            self,
            "verdict",
            Verdict.NOT_CANONICALLY_FIBERED if fibered else Verdict.INCONCLUSIVE,
        )

    @property
    def expected_bound(self) -> int:
        """Return 4n - 1, the bound observed for every computed n."""
        return 4 * self.n - 1

    def to_tsv(self) -> str:
        """Render 'n genus bound verdict' separated by tabs."""
        bound = "NA" if self.gc_lower_bound is None else self.gc_lower_bound
        return f"{self.n}\t{self.genus}\t{bound}\t{self.verdict}"

    def to_text(self) -> str:
        """Render a sentence describing the row."""
        knot = f"The (2,1)-cable of T(2,{2 * self.n + 1})"
        if self.gc_lower_bound is None:
            return f"{knot}: bound unavailable ({self.error}); genus {self.genus}."
        if self.verdict is Verdict.NOT_CANONICALLY_FIBERED:
            return (
                f"{knot} has canonical genus lower bound {self.gc_lower_bound}"
                f" > its genus {self.genus}; not canonically fibered."
            )
        return (
            f"{knot} has canonical genus lower bound {self.gc_lower_bound}"
            f" <= its genus {self.genus}; inconclusive."
        )


def iter_survey(max_n: int, engine: HomflyEngine | None = None) -> Iterator[SurveyRow]:
    """Yield survey rows for n = 1..max_n."""
    if max_n < 1:
        raise KnotbookDomainError(f"Survey range must be positive: {max_n}")

    for n in range(1, max_n + 1):
        word = survey_word(n)
        genus = cable_genus(2, 2 * n + 1, 2, 1)
        try:
            bound = gc_lower_bound(word, engine)
        except (KnotbookError, RecursionError) as exc:
            _LOGGER.warning("survey; n=%s; bound failed: %s", n, exc)
            yield SurveyRow(n, len(word), genus, None, error=str(exc))
            continue

        row = SurveyRow(n, len(word), genus, bound)
        if bound != row.expected_bound:
            _LOGGER.warning(
                "survey; n=%s; bound %s differs from 4n-1=%s",
                n,
                bound,
                row.expected_bound,
            )
        _LOGGER.debug("survey; n=%s; letters=%s; %s", n, len(word), row.verdict)
        yield row


def survey(max_n: int, engine: HomflyEngine | None = None) -> list[SurveyRow]:
    """Return survey rows for n = 1..max_n."""
    return list(iter_survey(max_n, engine))
