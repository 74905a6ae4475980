"""Exact Laurent polynomials in v and z with integer coefficients."""
from __future__ import annotations

import re
from collections.abc import Iterator, Mapping
from enum import StrEnum
from tokenize import TokenError
from types import MappingProxyType
from typing import Final

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from .exceptions import KnotbookDomainError, KnotbookParseError

Exponents = tuple[int, int]

V: Final = sympy.Symbol("v")
Z: Final = sympy.Symbol("z")

_ALLOWED: Final = re.compile(r"[0-9vz+\-*^/()\s]*")
_TRANSFORMATIONS: Final = standard_transformations + (convert_xor,)


class ArithOp(StrEnum):
    """Ring operations."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"


class LaurentPoly2:
    """Sparse map from (v-exponent, z-exponent) to a nonzero integer."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponents, int] | None = None) -> None:
        """Drop zero coefficients."""
        self._terms: dict[Exponents, int] = {
            (int(a), int(b)): int(c) for (a, b), c in (terms or {}).items() if c
        }
        self._hash: int | None = None

    @classmethod
    def monomial(cls, coeff: int = 1, v: int = 0, z: int = 0) -> LaurentPoly2:
        """Return coeff * v^v * z^z."""
        return cls({(v, z): coeff})

    @classmethod
    def constant(cls, value: int) -> LaurentPoly2:
        """Return a constant polynomial."""
        return cls({(0, 0): value})

    @property
    def terms(self) -> Mapping[Exponents, int]:
        """Return a read-only view of the terms."""
        return MappingProxyType(self._terms)

    def coefficient(self, v: int, z: int) -> int:
        """Return the coefficient of v^v z^z."""
        return self._terms.get((v, z), 0)

    def z_degrees(self) -> list[int]:
        """Return the distinct z-exponents in ascending order."""
        return sorted({b for _, b in self._terms})

    def is_monomial(self) -> bool:
        """Return True for a single term."""
        return len(self._terms) == 1

    def __iter__(self) -> Iterator[tuple[Exponents, int]]:
        return iter(sorted(self._terms.items(), key=_term_order))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> LaurentPoly2:
        return LaurentPoly2({k: -c for k, c in self._terms.items()})

    def __add__(self, other: LaurentPoly2 | int) -> LaurentPoly2:
        other = _coerce(other)
        terms = dict(self._terms)
        for key, coeff in other._terms.items():
            terms[key] = terms.get(key, 0) + coeff
        return LaurentPoly2(terms)

    __radd__ = __add__

    def __sub__(self, other: LaurentPoly2 | int) -> LaurentPoly2:
        return self + (-_coerce(other))

    def __rsub__(self, other: int) -> LaurentPoly2:
        return _coerce(other) - self

    def __mul__(self, other: LaurentPoly2 | int) -> LaurentPoly2:
        other = _coerce(other)
        terms: dict[Exponents, int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                terms[key] = terms.get(key, 0) + c1 * c2
        return LaurentPoly2(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> LaurentPoly2:
        if exponent < 0:
            if not self.is_monomial():
                raise KnotbookDomainError(
                    f"Only monomials have negative powers, got {self}"
                )
            ((a, b), c), = self._terms.items()
            if c not in (1, -1):
                raise KnotbookDomainError(f"Monomial {self} is not a unit")
            return LaurentPoly2({(a * exponent, b * exponent): c ** -exponent})
        result = LaurentPoly2.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def canonical_text(self) -> str:
        """Render terms by z descending then v ascending."""
        if not self._terms:
            return "0"
        parts = []
        for index, ((a, b), coeff) in enumerate(self):
            body = _render_term(abs(coeff), a, b)
            if index == 0:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f"{'-' if coeff < 0 else '+'} {body}")
        return " ".join(parts)

    def to_sympy(self) -> sympy.Expr:
        """Return the polynomial as a sympy expression."""
        return sympy.Add(*(c * V**a * Z**b for (a, b), c in self._terms.items()))

    def __str__(self) -> str:
        return self.canonical_text()

    def __repr__(self) -> str:
        return f"LaurentPoly2({self.canonical_text()!r})"


ZERO: Final = LaurentPoly2()
ONE: Final = LaurentPoly2.constant(1)
VAR_V: Final = LaurentPoly2.monomial(1, 1, 0)
VAR_Z: Final = LaurentPoly2.monomial(1, 0, 1)


def poly_arith(lhs: LaurentPoly2, rhs: LaurentPoly2, op: ArithOp) -> LaurentPoly2:
    """Apply a ring operation."""
    match op:
        case ArithOp.ADD:
            return lhs + rhs
        case ArithOp.SUB:
            return lhs - rhs
        case ArithOp.MUL:
            return lhs * rhs

    raise TypeError(f"Invalid ring operation: {op}")


def canonical_text(poly: LaurentPoly2) -> str:
    """Render a polynomial in the canonical grammar."""
    return poly.canonical_text()


def from_sympy(expr: sympy.Expr) -> LaurentPoly2:
    """Convert an expanded sympy expression in v, z to a polynomial."""
    expr = sympy.expand(expr)
    if unknown := expr.free_symbols - {V, Z}:
        names = ", ".join(sorted(str(s) for s in unknown))
        raise KnotbookParseError(f"Unknown variables: {names}")
    if expr.is_zero:
        return LaurentPoly2()

    terms: dict[Exponents, int] = {}
    for monomial, coeff in expr.as_coefficients_dict().items():
        if not coeff.is_Integer:
            raise KnotbookParseError(f"Non-integer coefficient {coeff}")
        powers = {V: 0, Z: 0}
        if monomial != 1:
            for base, exp in monomial.as_powers_dict().items():
                if base not in powers or not exp.is_Integer:
                    raise KnotbookParseError(f"Not a Laurent monomial: {monomial}")
                powers[base] += int(exp)
        key = (powers[V], powers[Z])
        terms[key] = terms.get(key, 0) + int(coeff)
    return LaurentPoly2(terms)


def parse_polynomial(text: str) -> LaurentPoly2:
    """Parse the canonical grammar, or any integer expression in v and z."""
    if not _ALLOWED.fullmatch(text):
        raise KnotbookParseError(f"Unexpected characters in polynomial '{text}'")
    if not text.strip():
        raise KnotbookParseError("Empty polynomial")

    try:
        expr = parse_expr(
            text,
            local_dict={"v": V, "z": Z},
            transformations=_TRANSFORMATIONS,
            evaluate=True,
        )
    except (SyntaxError, TypeError, TokenError, sympy.SympifyError) as exc:
        raise KnotbookParseError(f"Cannot parse polynomial '{text}': {exc}") from exc

    return from_sympy(expr)


# #### Internal functions ####


def _coerce(value: LaurentPoly2 | int) -> LaurentPoly2:
    if isinstance(value, LaurentPoly2):
        return value
    if isinstance(value, int):
        return LaurentPoly2.constant(value)
    raise TypeError(f"Cannot combine LaurentPoly2 with {type(value).__name__}")


def _term_order(item: tuple[Exponents, int]) -> tuple[int, int]:
    (a, b), _ = item
    return (-b, a)


def _render_term(coeff: int, a: int, b: int) -> str:
    factors = [
        name if exp == 1 else f"{name}^{exp}"
        for name, exp in (("v", a), ("z", b))
        if exp != 0
    ]
    if not factors:
        return str(coeff)
    monomial = "*".join(factors)
    return monomial if coeff == 1 else f"{coeff}*{monomial}"
