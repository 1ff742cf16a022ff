"""Equivalence checks between two structures, with a smallest distinguishing witness."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

from .kernel import Dces, Structure, StructureError
from .posets import MODES, posets
from .semantics import _state_key, configurations, dces_state_graph, traces, transition_graph

KINDS = ("trace", "config", "transition", "state", "poset")


class AlphabetMismatch(StructureError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a comparison.

    ``witness`` is the smallest item present on exactly one ``side``
    (``"left"`` or ``"right"``); both are ``None`` when the structures agree.
    """

    equal: bool
    witness: Optional[Any] = None
    side: Optional[str] = None

    def __bool__(self) -> bool:
        return self.equal


def _config_key(c) -> tuple:
    return (len(c), sorted(c))


def _edge_key(edge) -> tuple:
    x, y = edge
    return (len(x) + len(y), sorted(x), sorted(y))


def _state_edge_key(edge) -> tuple:
    a, b = edge
    return (len(a.config) + len(b.config), _state_key(a), _state_key(b))


def _compare(left: frozenset, right: frozenset, key) -> Verdict:
    if left == right:
        return Verdict(True)
    only = [(key(x), "left", x) for x in left - right] + [(key(x), "right", x) for x in right - left]
    _, side, item = min(only, key=lambda t: (t[0], t[1]))
    return Verdict(False, item, side)


def split_kind(kind: str) -> tuple[str, Optional[str]]:
    """Accept ``poset`` with a separate mode or the combined ``poset:early`` form."""
    if ":" in kind:
        base, mode = kind.split(":", 1)
        return base, mode
    return kind, None


def equivalent(a: Structure, b: Structure, kind: str = "trace", mode: Optional[str] = None) -> Verdict:
    """Compare ``a`` and ``b`` under ``kind`` (poset kinds take a ``mode``, default early)."""
    kind, inline_mode = split_kind(kind)
    mode = mode or inline_mode
    if kind not in KINDS:
        raise StructureError(f"unknown equivalence kind {kind!r}")
    if kind != "poset" and a.events != b.events:
        raise AlphabetMismatch(
            f"alphabets differ: {sorted(a.events ^ b.events)} occur on one side only"
        )
    if kind == "trace":
        return _compare(traces(a), traces(b), lambda t: (len(t), t))
    if kind == "config":
        return _compare(configurations(a), configurations(b), _config_key)
    if kind == "transition":
        ga, gb = transition_graph(a), transition_graph(b)
        verdict = _compare(ga.edges, gb.edges, _edge_key)
        if verdict.equal:  # every node carries a self-loop, so this is only a safeguard
            return _compare(ga.nodes, gb.nodes, _config_key)
        return verdict
    if kind == "state":
        if not (isinstance(a, Dces) and isinstance(b, Dces)):
            raise StructureError("state equivalence compares two DCESs")
        ga, gb = dces_state_graph(a), dces_state_graph(b)
        verdict = _compare(ga.nodes, gb.nodes, _state_key)
        if verdict.equal:
            return _compare(ga.edges, gb.edges, _state_edge_key)
        return verdict
    mode = mode or "early"
    if mode not in MODES:
        raise StructureError(f"unknown poset mode {mode!r}")
    return _compare(posets(a, mode), posets(b, mode), lambda p: p.sort_key())
