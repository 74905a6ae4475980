"""HOMFLY-PT through the trace on the Hecke algebra of the symmetric group."""
from __future__ import annotations

from functools import lru_cache

from .braidcore import ArtinWord, writhe
from .const import DEFAULT_MEMO_SIZE, EngineType
from .homfly_engine import DELTA, V_INV, HomflyEngine
from .polyring import ONE, VAR_V, VAR_Z, ZERO, LaurentPoly2

# Basis element T_w keyed by the one-line notation of w, values 0..n-1.
Element = dict[tuple[int, ...], LaurentPoly2]


class HeckeTraceEngine(HomflyEngine):
    """Expands the braid in the permutation basis and traces each basis element.

    Generators satisfy g^2 = z g + 1; the trace is normalized so that
    tr(1_n) = delta^(n-1) and tr(x g_(n-1) y) = v^-1 tr(x y) for x, y on n-1 strands.
    """

    engine_type = EngineType.HECKE

    def __init__(self, memo_size: int | None = DEFAULT_MEMO_SIZE) -> None:
        """Initialize with a cap on the trace memo table (None for unbounded)."""
        self.memo_size = memo_size
        self._trace = lru_cache(maxsize=memo_size)(self._basis_trace)

    def evaluate(self, word: ArtinWord) -> LaurentPoly2:
        """Return v^writhe times the trace of the braid's image."""
        element: Element = {tuple(range(word.strands)): ONE}
        for letter in word:
            element = multiply_generator(element, abs(letter), inverse=letter < 0)

        total = ZERO
        for perm, coeff in element.items():
            total += coeff * self._trace(perm)
        return VAR_V ** writhe(word) * total

    def memo_info(self):
        """Return hit/miss statistics of the trace memo."""
        return self._trace.cache_info()

    # #### Internal methods ####

    def _basis_trace(self, perm: tuple[int, ...]) -> LaurentPoly2:
        n = len(perm)
        if n <= 1:
            return ONE

        top = n - 1
        if perm[-1] == top:
            return DELTA * self._trace(perm[:-1])

        # T_w = T_w' g_(n-1) g_(n-2) ... g_(j+1) with w' fixing the top point
        j = perm.index(top)
        element: Element = {perm[:j] + perm[j + 1 :]: ONE}
        for i in range(n - 2, j, -1):
            element = multiply_generator(element, i)

        total = ZERO
        for reduced, coeff in element.items():
            total += coeff * self._trace(reduced)
        return V_INV * total


def multiply_generator(element: Element, i: int, inverse: bool = False) -> Element:
    """Right-multiply by g_i, or by g_i^-1 = g_i - z."""
    result: Element = {}

    def accumulate(perm: tuple[int, ...], coeff: LaurentPoly2) -> None:
        total = result.get(perm, ZERO) + coeff
        if total:
            result[perm] = total
        else:
            result.pop(perm, None)

    for perm, coeff in element.items():
        swapped = list(perm)
        swapped[i - 1], swapped[i] = swapped[i], swapped[i - 1]
        accumulate(tuple(swapped), coeff)
        if perm[i - 1] > perm[i]:
            accumulate(perm, VAR_Z * coeff)
        if inverse:
            accumulate(perm, -(VAR_Z * coeff))

    return result
