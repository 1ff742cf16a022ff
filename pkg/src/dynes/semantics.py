"""Traces, configurations, transition graphs and the DCES state machine.

Traces are tuples of event names, configurations are frozensets.  For the
history-determined families (SES, GES, DES, BES, EBES) a trace may be extended
by ``e`` exactly when :func:`enabled_after` holds for the set of events that
already occurred.  RCES and DCES traces are the single-event paths of their
step semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import FrozenSet, Iterable, Iterator, Mapping, Tuple

from .kernel import (
    Bes,
    Dces,
    Des,
    Ebes,
    Ges,
    Rces,
    Ses,
    Structure,
    StructureError,
    classify_dces,
    has_causes,
    require_valid,
)

Trace = Tuple[str, ...]
Config = FrozenSet[str]
EMPTY: Config = frozenset()

TRACE_FAMILIES = (Ses, Ges, Des, Ebes)  # Bes is a Des


def _subsets(items: Iterable[str]) -> Iterator[frozenset]:
    items = sorted(items)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


# --------------------------------------------------------------------------- #
# Derived cause sets
# --------------------------------------------------------------------------- #


def initial_causes(s: Structure, e: str) -> frozenset:
    """``ic(e)``: the initial causes of ``e``."""
    if not has_causes(s):
        raise StructureError(f"{s.family} has no cause relation")
    if e not in s.events:
        raise StructureError(f"unknown event {e!r}")
    return frozenset(c for c, t in s.causes if t == e)


def dropped_causes(s: Structure, history: Iterable[str], e: str) -> frozenset:
    """``dc(H, e)``: causes of ``e`` dropped by some event of ``history``."""
    if not has_causes(s):
        raise StructureError(f"{s.family} has no cause relation")
    history = set(history)
    return frozenset(c for c, d, t in getattr(s, "drops", ()) if t == e and d in history)


def added_causes(s: Structure, history: Iterable[str], e: str) -> frozenset:
    """``ac(H, e)``: causes added to ``e`` by ``history``.

    An adder equal to the target or to the added cause has no effect.
    """
    if not isinstance(s, (Ges, Dces)):
        raise StructureError(f"{s.family} has no growing causality")
    history = set(history)
    return frozenset(
        c for c, a, t in s.adds if t == e and a in history and a not in (e, c)
    )


def _conflicts_with(s, e: str, history) -> bool:
    return any(frozenset((e, h)) in s.conflict for h in history)


def enabled_after(s: Structure, history: frozenset, e: str) -> bool:
    """Can a trace with underlying set ``history`` be extended by ``e``?"""
    if e in history or e not in s.events:
        return False
    if isinstance(s, Ebes):
        if any((e, h) in s.disabling for h in history):
            return False
        return all(x & history for x, t in s.bundles if t == e)
    if _conflicts_with(s, e, history):
        return False
    if isinstance(s, Des):
        return all(x & history for x, t in s.bundles if t == e)
    if isinstance(s, Ses):
        return initial_causes(s, e) - dropped_causes(s, history, e) <= history
    if isinstance(s, Ges):
        return (initial_causes(s, e) | added_causes(s, history, e)) <= history
    raise StructureError(f"{s.family} has no history-based trace rule")


# --------------------------------------------------------------------------- #
# Step relations
# --------------------------------------------------------------------------- #


def _conflict_free(s, events) -> bool:
    return not any(frozenset(p) in s.conflict for p in combinations(sorted(events), 2))


def _ses_ges_steps(s, x: Config) -> Iterator[Config]:
    if isinstance(s, Ses):
        ok = lambda e: initial_causes(s, e) - dropped_causes(s, x, e) <= x
    else:
        ok = lambda e: (initial_causes(s, e) | added_causes(s, x, e)) <= x
    candidates = sorted(e for e in s.events - x if ok(e) and not _conflicts_with(s, e, x))
    for extra in _subsets(candidates):
        if not _conflict_free(s, extra):
            continue
        if isinstance(s, Ges) and not _growing_step_ok(s, x, extra):
            continue
        yield x | extra


def _growing_step_ok(s, x: Config, extra: Config) -> bool:
    # an adder firing together with its target requires the added cause to be present already
    for c, m, t in s.adds:
        if m in extra and t in extra and m not in (c, t) and c not in x:
            return False
    return True


def _rces_enabled_sets(s: Rces, x: Config) -> set:
    return {z for w, z in s.enablings if w <= x}


def rces_step(s: Rces, x: Config, y: Config) -> bool:
    """``X -> Y`` iff ``X <= Y`` and every ``Z`` with ``X <= Z <= Y`` is enabled by some ``W <= X``."""
    if not x <= y:
        return False
    enabled = _rces_enabled_sets(s, x)
    return all(x | z in enabled for z in _subsets(y - x))


def _rces_steps(s: Rces, x: Config) -> Iterator[Config]:
    enabled = _rces_enabled_sets(s, x)
    for extra in _subsets(s.events - x):
        if all(x | z in enabled for z in _subsets(extra)):
            yield x | extra


def _extension_steps(s, x: Config) -> Iterator[Config]:
    yield x
    for e in sorted(s.events - x):
        if enabled_after(s, x, e):
            yield x | {e}


def step(s: Structure, x: Iterable[str], y: Iterable[str]) -> bool:
    """Single configuration step ``X -> Y`` (not restricted to reachable ``X``)."""
    x, y = frozenset(x), frozenset(y)
    if isinstance(s, Rces):
        return rces_step(s, x, y)
    if isinstance(s, Dces):
        raise StructureError("DCES steps depend on the causal state; use dces_state_graph")
    if isinstance(s, (Ses, Ges)):
        return y in set(_ses_ges_steps(s, x)) if x <= y else False
    return y in set(_extension_steps(s, x))


def _steps_from(s, x: Config) -> Iterator[Config]:
    if isinstance(s, (Ses, Ges)):
        return _ses_ges_steps(s, x)
    if isinstance(s, Rces):
        return _rces_steps(s, x)
    return _extension_steps(s, x)


@dataclass(frozen=True)
class TransitionGraph:
    nodes: FrozenSet[Config]
    edges: FrozenSet[Tuple[Config, Config]]

    def successors(self, x: Config) -> set:
        return {y for a, y in self.edges if a == x}


@lru_cache(maxsize=4096)
def transition_graph(s: Structure) -> TransitionGraph:
    """Configurations reachable from the empty one and all steps between them."""
    require_valid(s)
    if isinstance(s, Dces):
        g = dces_state_graph(s)
        return TransitionGraph(
            frozenset(n.config for n in g.nodes),
            frozenset((a.config, b.config) for a, b in g.edges),
        )
    nodes = {EMPTY}
    edges = set()
    todo = [EMPTY]
    while todo:
        x = todo.pop()
        for y in _steps_from(s, x):
            edges.add((x, y))
            if y not in nodes:
                nodes.add(y)
                todo.append(y)
    return TransitionGraph(frozenset(nodes), frozenset(edges))


# --------------------------------------------------------------------------- #
# DCES state machine
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class DcesState:
    """A configuration together with the outstanding causes of each pending event."""

    config: Config
    cs: Tuple[Tuple[str, FrozenSet[str]], ...]

    @staticmethod
    def make(config: Iterable[str], cs: Mapping[str, Iterable[str]]) -> "DcesState":
        return DcesState(
            frozenset(config), tuple(sorted((e, frozenset(v)) for e, v in cs.items()))
        )

    def cs_map(self) -> dict[str, frozenset]:
        return dict(self.cs)

    def causes_of(self, e: str) -> frozenset:
        return self.cs_map()[e]

    def __lt__(self, other):  # configurations first, then causal state
        return _state_key(self) < _state_key(other)


def _state_key(st: DcesState):
    return (len(st.config), sorted(st.config), [(e, sorted(v)) for e, v in st.cs])


@dataclass(frozen=True)
class StateGraph:
    root: DcesState
    nodes: FrozenSet[DcesState]
    edges: FrozenSet[Tuple[DcesState, DcesState]]

    def successors(self, st: DcesState) -> list[DcesState]:
        return sorted(b for a, b in self.edges if a == st)

    def states_at(self, config: Iterable[str]) -> list[DcesState]:
        config = frozenset(config)
        return sorted(n for n in self.nodes if n.config == config)


def initial_state(d: Dces) -> DcesState:
    return DcesState.make(EMPTY, {e: initial_causes(d, e) for e in d.events})


def dces_steps(d: Dces, state: DcesState) -> Iterator[DcesState]:
    """All successor states of ``state``, one per admissible set of newly occurring events."""
    c = state.config
    cs = state.cs_map()
    ready = sorted(e for e in d.events - c if not cs[e])
    for extra in _subsets(ready):
        new = c | extra
        if not _conflict_free(d, new):
            continue
        if any(m in extra and t in extra and m not in (k, t) and k not in c for k, m, t in d.adds):
            continue
        dropped = {(k, t) for k, m, t in d.drops if m in extra}
        added = {(k, t) for k, m, t in d.adds if m in extra and m not in (k, t)}
        rest = d.events - new
        if any(k in rest and t in rest for k, t in dropped & added):
            continue
        nxt = {}
        for t in rest:
            old = cs[t]
            nxt[t] = frozenset(
                k
                for k in rest
                if (k in old and (k, t) not in dropped) or (k not in old and (k, t) in added)
            )
        yield DcesState.make(new, nxt)


@lru_cache(maxsize=4096)
def dces_state_graph(d: Dces) -> StateGraph:
    require_valid(d)
    root = initial_state(d)
    nodes = {root}
    edges = set()
    todo = [root]
    while todo:
        st = todo.pop()
        for nxt in dces_steps(d, st):
            edges.add((st, nxt))
            if nxt not in nodes:
                nodes.add(nxt)
                todo.append(nxt)
    return StateGraph(root, frozenset(nodes), frozenset(edges))


def causal_state_closed_form(d: Dces, config: Iterable[str]) -> dict[str, frozenset]:
    """Causal state of a reachable configuration of a single-state DCES, without search."""
    config = frozenset(config)
    if not classify_dces(d).is_ssdc:
        raise StructureError("closed form only holds for single-state DCESs")
    if config not in configurations(d, "step"):
        raise StructureError(f"configuration {sorted(config)} is not reachable")
    return {
        e: (initial_causes(d, e) | added_causes(d, config, e)) - (dropped_causes(d, config, e) | config)
        for e in d.events - config
    }


# --------------------------------------------------------------------------- #
# Traces and configurations
# --------------------------------------------------------------------------- #


@lru_cache(maxsize=4096)
def traces(s: Structure) -> FrozenSet[Trace]:
    """All traces of ``s`` (a finite, prefix-closed set including the empty trace)."""
    require_valid(s)
    out: set[Trace] = set()
    if isinstance(s, Dces):
        g = dces_state_graph(s)
        succ: dict[DcesState, list] = {}
        for a, b in g.edges:
            if len(b.config) == len(a.config) + 1:
                succ.setdefault(a, []).append(b)

        def walk(st: DcesState, prefix: Trace) -> None:
            out.add(prefix)
            for b in succ.get(st, ()):
                (e,) = b.config - st.config
                walk(b, prefix + (e,))

        walk(g.root, ())
        return frozenset(out)

    if isinstance(s, Rces):
        ext = lambda h, e: rces_step(s, h, h | {e})
    else:
        ext = lambda h, e: enabled_after(s, h, e)

    def extend(prefix: Trace, history: frozenset) -> None:
        out.add(prefix)
        for e in sorted(s.events - history):
            if ext(history, e):
                extend(prefix + (e,), history | {e})

    extend((), EMPTY)
    return frozenset(out)


def configurations(s: Structure, mode: str = "trace") -> FrozenSet[Config]:
    """Trace-based (``mode='trace'``) or step-reachable (``mode='step'``) configurations."""
    if mode == "trace":
        return frozenset(frozenset(t) for t in traces(s))
    if mode == "step":
        return transition_graph(s).nodes
    raise ValueError(f"unknown configuration mode {mode!r}")


def is_prefix_closed(ts: Iterable[Trace]) -> bool:
    ts = set(ts)
    return all(t[:-1] in ts for t in ts if t)
