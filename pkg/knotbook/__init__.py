"""Braids, HOMFLY-PT genus bounds and braided open books.

For more details about this package, please refer to README.md
"""
from __future__ import annotations

from .arcpres import arc_presentation, build_guide_graph, smooth_to_unknot
from .braidcore import (
    ArtinWord,
    BandLetter,
    BklWord,
    Permutation,
    bkl_shift,
    bkl_to_artin,
    cable_word,
    torus_knot_braid_word,
    word_permutation,
    writhe,
)
from .homfly import gc_lower_bound, homfly_oracle, homfly_vz, max_z_degree, survey
from .plumb import Merger, connected_sum_word, enumerate_mergers, plumb_words
from .polyring import LaurentPoly2, canonical_text, parse_polynomial
from .rampichini import (
    RampichiniDiagram,
    extract_word,
    plumb_diagrams,
    translate,
    validate,
)
from .seifert import PlanarDiagram, canonical_genus, parse_pd, seifert_circles
from .util import sw_version

__version__ = sw_version()

__all__ = [
    "ArtinWord",
    "BandLetter",
    "BklWord",
    "LaurentPoly2",
    "Merger",
    "Permutation",
    "PlanarDiagram",
    "RampichiniDiagram",
    "arc_presentation",
    "bkl_shift",
    "bkl_to_artin",
    "build_guide_graph",
    "cable_word",
    "canonical_genus",
    "canonical_text",
    "connected_sum_word",
    "enumerate_mergers",
    "extract_word",
    "gc_lower_bound",
    "homfly_oracle",
    "homfly_vz",
    "max_z_degree",
    "parse_pd",
    "parse_polynomial",
    "plumb_diagrams",
    "plumb_words",
    "seifert_circles",
    "smooth_to_unknot",
    "survey",
    "torus_knot_braid_word",
    "translate",
    "validate",
    "word_permutation",
    "writhe",
]
