"""Braid words in Artin and band generators, and their permutations."""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from functools import reduce
from operator import mul
from typing import NamedTuple

from .const import STRANDS_HEADER
from .exceptions import KnotbookDomainError, KnotbookParseError
from .util import parse_int, sign, split_header


@dataclass(frozen=True, slots=True)
class Permutation:
    """A bijection on {1..n}, stored as 1-based images.

    ``p * q`` is the composite that applies ``q`` first.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        """Check that images is a bijection."""
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise KnotbookDomainError(f"Not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        """Return the identity on n points."""
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        """Return the transposition (i j) on n points."""
        if not (1 <= i <= n and 1 <= j <= n and i != j):
            raise KnotbookDomainError(f"Invalid transposition ({i} {j}) on {n} points")
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def cycle(cls, n: int) -> Permutation:
        """Return the n-cycle (1 2 ... n)."""
        return cls(tuple(range(2, n + 1)) + (1,) if n else ())

    @property
    def size(self) -> int:
        """Return the number of points."""
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        if self.size != other.size:
            raise KnotbookDomainError(
                f"Cannot compose permutations of sizes {self.size} and {other.size}"
            )
        return Permutation(tuple(self(other(x)) for x in range(1, self.size + 1)))

    def inverse(self) -> Permutation:
        """Return the inverse permutation."""
        images = [0] * self.size
        for x, y in enumerate(self.images, start=1):
            images[y - 1] = x
        return Permutation(tuple(images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Return the non-trivial cycles, each starting at its smallest point."""
        seen: set[int] = set()
        result = []
        for start in range(1, self.size + 1):
            if start in seen:
                continue
            cycle = [start]
            seen.add(start)
            point = self(start)
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self(point)
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def cycle_count(self) -> int:
        """Return the number of cycles, fixed points included."""
        moved = sum(len(c) for c in self.cycles())
        return len(self.cycles()) + self.size - moved

    def is_full_cycle(self) -> bool:
        """Return True if the permutation is a single cycle through every point."""
        return self.cycle_count() == 1

    def is_transposition(self) -> bool:
        """Return True for a single 2-cycle."""
        cycles = self.cycles()
        return len(cycles) == 1 and len(cycles[0]) == 2

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


def product(perms: Iterable[Permutation], n: int) -> Permutation:
    """Multiply permutations left to right."""
    return reduce(mul, perms, Permutation.identity(n))


@dataclass(frozen=True, slots=True)
class ArtinWord:
    """Word in the Artin generators; letter i is sigma_i, -i its inverse."""

    letters: tuple[int, ...]
    strands: int

    def __post_init__(self) -> None:
        """Check letter bounds."""
        object.__setattr__(self, "letters", tuple(self.letters))
        if self.strands < 1:
            raise KnotbookDomainError(f"Strand count must be positive: {self.strands}")
        for index, letter in enumerate(self.letters):
            if letter == 0 or abs(letter) >= self.strands:
                raise KnotbookDomainError(
                    f"Letter {letter} at {index} out of range for {self.strands} strands"
                )

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def concat(self, other: ArtinWord) -> ArtinWord:
        """Return the product word on the larger strand count."""
        return ArtinWord(self.letters + other.letters, max(self.strands, other.strands))

    def rotate(self, k: int) -> ArtinWord:
        """Return the cyclic conjugate starting at letter k."""
        if not self.letters:
            return self
        k %= len(self.letters)
        return ArtinWord(self.letters[k:] + self.letters[:k], self.strands)

    def stabilize(self, sign_: int = 1) -> ArtinWord:
        """Add a strand and append its generator with the given sign."""
        return ArtinWord(self.letters + (sign_ * self.strands,), self.strands + 1)

    def mirror(self) -> ArtinWord:
        """Invert every letter."""
        return ArtinWord(tuple(-x for x in self.letters), self.strands)

    def replace(self, index: int, letters: Sequence[int]) -> ArtinWord:
        """Replace the letter at index by a sequence of letters."""
        return ArtinWord(
            self.letters[:index] + tuple(letters) + self.letters[index + 1 :],
            self.strands,
        )


class BandLetter(NamedTuple):
    """Band generator a(i,j) raised to sign."""

    i: int
    j: int
    sign: int = 1

    def __str__(self) -> str:
        return f"{'a' if self.sign > 0 else 'A'}({self.i},{self.j})"


@dataclass(frozen=True, slots=True)
class BklWord:
    """Word in the band generators a(i,j)."""

    letters: tuple[BandLetter, ...]
    strands: int

    def __post_init__(self) -> None:
        """Check letter bounds."""
        object.__setattr__(
            self, "letters", tuple(BandLetter(*letter) for letter in self.letters)
        )
        if self.strands < 1:
            raise KnotbookDomainError(f"Strand count must be positive: {self.strands}")
        for index, (i, j, eps) in enumerate(self.letters):
            if not 1 <= i < j <= self.strands:
                raise KnotbookDomainError(
                    f"Band a({i},{j}) at {index} out of range for {self.strands} strands"
                )
            if eps not in (1, -1):
                raise KnotbookDomainError(f"Band sign must be +1 or -1, got {eps}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[BandLetter]:
        return iter(self.letters)

    def concat(self, other: BklWord) -> BklWord:
        """Return the product word on the larger strand count."""
        return BklWord(self.letters + other.letters, max(self.strands, other.strands))


# #### Constructors and invariants ####


def torus_knot_braid_word(p: int, q: int) -> ArtinWord:
    """Return the braid word (1 .. p-1) repeated q times on p strands."""
    if p < 1 or q < 1:
        raise KnotbookDomainError(f"Torus knot parameters must be positive: ({p}, {q})")
    return ArtinWord(tuple(range(1, p)) * q, p)


def writhe(word: ArtinWord | BklWord) -> int:
    """Return the sum of the letter signs."""
    if isinstance(word, BklWord):
        return sum(letter.sign for letter in word)
    return sum(sign(letter) for letter in word)


def cable_word(word: ArtinWord, k: int, l: int) -> ArtinWord:  # noqa: E741
    """Return a braid word of the (k,l)-cable of the closure of word."""
    if k < 1:
        raise KnotbookDomainError(f"Cable multiplicity must be positive: {k}")

    letters: list[int] = []
    for i in word:
        subword: list[int] = []
        for t in range(k):
            subword.extend(range(k * abs(i) + t, k * (abs(i) - 1) + t, -1))
        if i < 0:
            subword = [-j for j in subword]
        letters.extend(subword)

    framing = l - k * writhe(word)
    if framing < 0:
        letters.extend(-framing * list(range(-1, -k, -1)))
    else:
        letters.extend(framing * list(range(1, k)))

    return ArtinWord(tuple(letters), k * word.strands)


def word_permutation(word: ArtinWord | BklWord) -> Permutation:
    """Return the permutation of the braid, multiplying letters left to right."""
    n = word.strands
    if isinstance(word, BklWord):
        perms = (Permutation.transposition(n, i, j) for i, j, _ in word)
    else:
        perms = (Permutation.transposition(n, abs(x), abs(x) + 1) for x in word)
    return product(perms, n)


def bkl_shift(word: BklWord, offset: int, new_strands: int) -> BklWord:
    """Shift every band index by offset onto new_strands strands."""
    if offset < 0:
        raise KnotbookDomainError(f"Shift offset must be non-negative: {offset}")
    top = max((j for _, j, _ in word), default=0) + offset
    if top > new_strands:
        raise KnotbookDomainError(
            f"Shifted index {top} exceeds {new_strands} strands"
        )
    return BklWord(
        tuple(BandLetter(i + offset, j + offset, eps) for i, j, eps in word),
        new_strands,
    )


def band_to_artin(letter: BandLetter) -> list[int]:
    """Expand a(i,j)^e as (s_{j-1}..s_{i+1}) s_i^e (s_{i+1}^-1..s_{j-1}^-1)."""
    i, j, eps = letter
    run = list(range(j - 1, i, -1))
    return run + [eps * i] + [-x for x in reversed(run)]


def bkl_to_artin(word: BklWord) -> ArtinWord:
    """Expand a band word into Artin generators."""
    letters: list[int] = []
    for letter in word:
        letters.extend(band_to_artin(letter))
    return ArtinWord(tuple(letters), word.strands)


# #### Text formats ####


def inferred_artin_strands(letters: Sequence[int]) -> int:
    """Return max|i| + 1, the fewest strands that fit the letters."""
    return max((abs(x) for x in letters), default=0) + 1


def inferred_bkl_strands(letters: Sequence[BandLetter]) -> int:
    """Return max j, or 1 for the empty word."""
    return max((letter.j for letter in letters), default=1)


def parse_artin_word(
    text: str, *, strands: int | None = None, infer: bool = False
) -> ArtinWord:
    """Parse whitespace-separated letters with an optional 'strands=<m>;' header."""
    headers, body = split_header(text)
    letters = tuple(parse_int(tok, pos) for pos, tok in enumerate(body.split()))
    if 0 in letters:
        raise KnotbookParseError("Artin letters must be nonzero", letters.index(0))
    return ArtinWord(
        letters,
        _strand_count(headers, strands, infer, inferred_artin_strands(letters)),
    )


def format_artin_word(word: ArtinWord) -> str:
    """Render letters, with a header only when the strand count is not inferable."""
    body = " ".join(str(x) for x in word)
    if word.strands != inferred_artin_strands(word.letters):
        return f"{STRANDS_HEADER}={word.strands}; {body}".rstrip()
    return body


def parse_bkl_word(
    text: str, *, strands: int | None = None, infer: bool = False
) -> BklWord:
    """Parse tokens 'a(i,j)' and 'A(i,j)' with an optional strand header."""
    headers, body = split_header(text)
    letters = []
    *tokens, rest = "".join(body.split()).split(")")
    if rest:
        raise KnotbookParseError(f"Trailing text '{rest}'", len(tokens))
    for pos, token in enumerate(t + ")" for t in tokens):
        if token[:2] not in ("a(", "A("):
            raise KnotbookParseError(f"Expected a(i,j) or A(i,j), got '{token}'", pos)
        parts = token[2:-1].split(",")
        if len(parts) != 2:
            raise KnotbookParseError(f"Band needs two indices: '{token}'", pos)
        i, j = (parse_int(part.strip(), pos) for part in parts)
        letters.append(BandLetter(i, j, 1 if token[0] == "a" else -1))
    return BklWord(
        tuple(letters),
        _strand_count(headers, strands, infer, inferred_bkl_strands(letters)),
    )


def format_bkl_word(word: BklWord) -> str:
    """Render band letters, with a header only when needed."""
    body = " ".join(str(letter) for letter in word)
    if word.strands != inferred_bkl_strands(word.letters):
        return f"{STRANDS_HEADER}={word.strands}; {body}".rstrip()
    return body


# #### Internal functions ####


def _strand_count(
    headers: dict[str, str], strands: int | None, infer: bool, inferred: int
) -> int:
    for key in headers:
        if key != STRANDS_HEADER:
            raise KnotbookParseError(f"Unknown header '{key}'")
    if STRANDS_HEADER in headers:
        return parse_int(headers[STRANDS_HEADER])
    if strands is not None:
        return strands
    if infer:
        return inferred
    raise KnotbookParseError("Strand count missing and inference not requested")
