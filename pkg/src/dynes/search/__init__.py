"""Enumeration of structure spaces, counterexample search and the claim registry."""

from __future__ import annotations

from .core import (
    BUDGET,
    EXHAUSTED,
    FOUND,
    Filter,
    SearchOutcome,
    SearchSpec,
    closed_form_count,
    count_wellformed,
    enumerate_structures,
    find_match,
    find_match_parallel,
    merge,
    partition,
)
from .space import Dimension, Space

enumerate = enumerate_structures  # the operation's public name; shadows the builtin only here

__all__ = [
    "BUDGET",
    "EXHAUSTED",
    "FOUND",
    "Dimension",
    "Filter",
    "SearchOutcome",
    "SearchSpec",
    "Space",
    "closed_form_count",
    "enumerate",
    "count_wellformed",
    "enumerate_structures",
    "find_match",
    "find_match_parallel",
    "merge",
    "partition",
]
