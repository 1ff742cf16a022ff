"""Partial-order semantics: cause-based posets of traces and precedence posets.

Trace-based modes pick, for every position ``i`` of a trace, a cause set ``U``
among the events before ``i``; the poset of the trace is the reflexive and
transitive closure of ``u <= e_i`` for ``u`` in ``U``.  A mode may admit
several cause sets per position, hence several posets per trace.

* ``liberal``: every satisfying ``U`` drawn from the events that can matter;
* ``bsat`` (DES only): images of choice functions picking one event per bundle;
* ``minimal``: satisfying sets with no satisfying proper subset;
* ``late``: the minimal sets whose positions are latest;
* ``early``: among the configurations inside the history that enable the
  event, the minimal ones with the earliest positions.

Precedence mode yields one poset per configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, FrozenSet, Iterable, Tuple

from .kernel import Bes, Dces, Des, Ebes, Ses, Structure, StructureError, classify_dces
from .semantics import Config, configurations, dropped_causes, initial_causes, traces

TRACE_MODES = ("early", "liberal", "bsat", "minimal", "late")
MODES = TRACE_MODES + ("precedence",)


@dataclass(frozen=True)
class Poset:
    """A partial order stored as its reflexive-transitive closure."""

    carrier: FrozenSet[str]
    order: FrozenSet[Tuple[str, str]]

    @staticmethod
    def generated(carrier: Iterable[str], pairs: Iterable[Tuple[str, str]]) -> "Poset":
        carrier = frozenset(carrier)
        return Poset(carrier, closure(carrier, pairs))

    def leq(self, x: str, y: str) -> bool:
        return (x, y) in self.order

    def strict_pairs(self) -> list[Tuple[str, str]]:
        return sorted((x, y) for x, y in self.order if x != y)

    def is_partial_order(self) -> bool:
        c, o = self.carrier, self.order
        if any((x, x) not in o for x in c):
            return False
        if any(x != y and (y, x) in o for x, y in o):
            return False
        return all((x, z) in o for x, y in o for y2, z in o if y == y2)

    def sort_key(self):
        return (len(self.carrier), sorted(self.carrier), self.strict_pairs())


def closure(carrier: Iterable[str], pairs: Iterable[Tuple[str, str]]) -> FrozenSet[Tuple[str, str]]:
    carrier = sorted(carrier)
    rel = {(x, x) for x in carrier} | set(pairs)
    for k in carrier:  # Warshall
        into = [x for x in carrier if (x, k) in rel]
        out = [y for y in carrier if (k, y) in rel]
        rel.update((x, y) for x in into for y in out)
    return frozenset(rel)


# --------------------------------------------------------------------------- #
# Cause sets
# --------------------------------------------------------------------------- #


def _powerset(items):
    items = sorted(items)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def _minimal(candidates: Iterable[frozenset], ok: Callable[[frozenset], bool]) -> list[frozenset]:
    found: list[frozenset] = []
    for u in sorted(candidates, key=len):
        if ok(u) and not any(v < u for v in found):
            found.append(u)
    return found


def _latest(sets: list[frozenset], pos: dict[str, int]) -> list[frozenset]:
    key = lambda u: sorted((pos[x] for x in u), reverse=True)
    best = max(map(key, sets))
    return [u for u in sets if key(u) == best]


def _earliest(sets: list[frozenset], pos: dict[str, int]) -> list[frozenset]:
    key = lambda u: sorted((pos[x] for x in u), reverse=True)
    best = min(map(key, sets))
    return [u for u in sets if key(u) == best]


def cause_sets(s: Structure, trace: tuple, i: int, mode: str) -> list[frozenset]:
    """Admissible cause sets of ``trace[i]`` under ``mode``."""
    e = trace[i]
    history = frozenset(trace[:i])
    pos = {x: k for k, x in enumerate(trace)}

    if isinstance(s, Des):
        bundles = [x for x, t in s.bundles if t == e]
        pool = history & frozenset().union(*bundles) if bundles else frozenset()
        sat = lambda u: all(x & u for x in bundles)
    elif isinstance(s, Ses):
        ic = initial_causes(s, e)
        pool = history & (ic | {d for c, d, t in s.drops if t == e})
        sat = lambda u: ic - dropped_causes(s, u, e) <= u
    else:
        raise StructureError(f"{mode} posets are not defined for {s.family}")

    if mode == "liberal":
        return [u for u in _powerset(pool) if sat(u)]
    if mode == "bsat":
        if not isinstance(s, Des):
            raise StructureError("bundle-satisfaction posets are defined for DES only")
        choices = [sorted(x & history) for x in bundles]
        return sorted({frozenset(pick) for pick in product(*choices)}, key=sorted)
    if mode == "early":
        # Only configurations are candidates, so the choice depends on the
        # trace set alone; the earliest minimal one is kept.
        reachable = configurations(s)
        candidates = [u for u in _powerset(history) if u in reachable]
        return _earliest(_minimal(candidates, sat), pos)
    minimal = _minimal(_powerset(pool), sat)
    if mode == "minimal":
        return minimal
    if mode == "late":
        return _latest(minimal, pos)
    raise StructureError(f"unknown poset mode {mode!r}")


def trace_posets(s: Structure, trace: tuple, mode: str) -> FrozenSet[Poset]:
    per_position = [cause_sets(s, trace, i, mode) for i in range(len(trace))]
    out = set()
    for choice in product(*per_position):
        pairs = [(u, trace[i]) for i, cause in enumerate(choice) for u in cause]
        out.add(Poset.generated(trace, pairs))
    return frozenset(out)


# --------------------------------------------------------------------------- #
# Precedence posets
# --------------------------------------------------------------------------- #


def precedence(s: Structure, config: Config) -> Poset:
    """Configuration poset of an EBES, BES or EBDC."""
    c = frozenset(config)
    if isinstance(s, Ebes):
        pairs = {(x, e) for members, e in s.bundles if e in c for x in members & c}
        pairs |= {(x, y) for x, y in s.disabling if x in c and y in c}
    elif isinstance(s, Bes):
        pairs = {(x, e) for members, e in s.bundles if e in c for x in members & c}
    elif isinstance(s, Dces):
        pairs = {(x, y) for x, y in s.causes if x in c and y in c}
        pairs |= {(x, y) for x, y, t in s.adds if x == t and x in c and y in c}
        pairs |= {(d, t) for _, d, t in s.drops if d in c and t in c}
    else:
        raise StructureError(f"precedence posets are not defined for {s.family}")
    return Poset.generated(c, pairs)


def posets(s: Structure, mode: str = "early") -> FrozenSet[Poset]:
    """The (deduplicated) poset family of ``s`` under ``mode``."""
    if mode == "precedence":
        if isinstance(s, Dces):
            if not classify_dces(s).is_ebdc:
                raise StructureError("precedence posets need an EBDC")
            configs = configurations(s, "step")
        elif isinstance(s, (Ebes, Bes)):
            configs = configurations(s, "trace")
        else:
            raise StructureError(f"precedence posets are not defined for {s.family}")
        return frozenset(precedence(s, c) for c in configs)
    if mode not in TRACE_MODES:
        raise StructureError(f"unknown poset mode {mode!r}")
    if not isinstance(s, (Ses, Des)):
        raise StructureError(f"{mode} posets are not defined for {s.family}")
    out: set[Poset] = set()
    for t in traces(s):
        out |= trace_posets(s, t, mode)
    return frozenset(out)
