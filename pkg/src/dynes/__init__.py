"""Event structures with static and dynamic causality.

The package covers structure definitions and validation (:mod:`dynes.kernel`),
the ``.est`` file format (:mod:`dynes.syntax`), trace/configuration/transition/
state semantics (:mod:`dynes.semantics`), poset semantics (:mod:`dynes.posets`),
translations between families (:mod:`dynes.translate`), equivalence checks
(:mod:`dynes.equiv`), a corpus of named examples (:mod:`dynes.corpus`) and
exhaustive search with a claim registry (:mod:`dynes.search`).
"""

from __future__ import annotations

from .equiv import Verdict, equivalent
from .kernel import Bes, Dces, Des, Ebes, Ges, Rces, Ses, StructureError, classify_dces, validate
from .posets import Poset, posets
from .semantics import configurations, dces_state_graph, traces, transition_graph
from .syntax import ParseError, parse_structure, serialize
from .translate import translate

__version__ = "0.1.0"

__all__ = [
    "Bes",
    "Dces",
    "Des",
    "Ebes",
    "Ges",
    "ParseError",
    "Poset",
    "Rces",
    "Ses",
    "StructureError",
    "Verdict",
    "classify_dces",
    "configurations",
    "dces_state_graph",
    "equivalent",
    "parse_structure",
    "posets",
    "serialize",
    "traces",
    "transition_graph",
    "translate",
    "validate",
]
