"""Base class for HOMFLY-PT engines."""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Final

from .braidcore import ArtinWord
from .const import _LOGGER, EngineType
from .polyring import ONE, VAR_V, VAR_Z, LaurentPoly2

V_INV: Final = VAR_V**-1
Z_INV: Final = VAR_Z**-1

# value of the 2-component unlink
DELTA: Final = (V_INV - VAR_V) * Z_INV


def unlink_value(components: int) -> LaurentPoly2:
    """Return the invariant of the unlink with the given number of components."""
    return DELTA ** (components - 1) if components > 1 else ONE


class HomflyEngine(ABC):
    """Evaluates the invariant of a braid closure.

    Normalization: v^-1 P(L+) - v P(L-) = z P(L0), P(unknot) = 1.
    """

    engine_type: EngineType

    def __call__(self, word: ArtinWord) -> LaurentPoly2:
        """Evaluate and log the result."""
        result = self.evaluate(word)
        _LOGGER.debug(
            "%s; strands=%s; letters=%s; evaluated to '%s'",
            self.engine_type,
            word.strands,
            len(word),
            result,
        )
        return result

    @abstractmethod
    def evaluate(self, word: ArtinWord) -> LaurentPoly2:
        """Return the invariant of the closure of word."""
