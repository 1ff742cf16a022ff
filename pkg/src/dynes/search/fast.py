"""Vectorized evaluation of trace and configuration signatures over a space.

For the history-determined families (SES, GES, DES, BES, EBES) whether ``e``
may follow a history ``H`` is a conjunction of one condition per dimension.
Histories are encoded as bit sets over the sorted alphabet, and for every
event ``e`` the set of histories after which ``e`` is enabled is a bit mask
over the ``2^n`` histories.  The mask of a structure is the AND of the masks of
its choices, so whole blocks of a space are evaluated with numpy.

The per-choice masks are computed by :func:`dynes.semantics.enabled_after`
on a structure holding that single choice, so this module adds no semantic
rules of its own.

From the masks, the reachable histories ``R`` (the configurations) follow by
a sweep in increasing numeric order, and the trace set is determined by ``R``
and ``mask_e & R`` for every ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..kernel import Structure, StructureError
from ..semantics import EMPTY, configurations, enabled_after, traces
from .space import Space

HISTORY_FAMILIES = ("SES", "GES", "DES", "BES", "EBES")
MAX_EVENTS = 6  # 2^6 histories fit one uint64


def _bit_sets(alphabet) -> list[frozenset]:
    return [frozenset(x for i, x in enumerate(alphabet) if h >> i & 1) for h in range(1 << len(alphabet))]


def masks_of(s: Structure, alphabet) -> list[int]:
    """``[mask_e for e in alphabet]`` where bit ``H`` says ``e`` may follow history ``H``."""
    hs = _bit_sets(alphabet)
    return [sum(1 << h for h, hist in enumerate(hs) if enabled_after(s, hist, e)) for e in alphabet]


def _fresh_mask(n: int, i: int) -> int:
    """Histories not containing event ``i``."""
    return sum(1 << h for h in range(1 << n) if not h >> i & 1)


def _pair_bits(alphabet) -> dict:
    n = len(alphabet)
    return {(x, y): 1 << (i * n + j) for i, x in enumerate(alphabet) for j, y in enumerate(alphabet)}


def _stability(space: Space, choice) -> tuple[int, int]:
    """(pairs this choice requires, pairs it provides) for bundle stability."""
    bits = _pair_bits(space.alphabet)
    need = have = 0
    for rel, item in choice:
        if rel == "bundles" and space.family in ("BES", "EBES"):
            for x, y in combinations(sorted(item[0]), 2):
                need |= bits[(x, y)] | bits[(y, x)]
        elif rel == "conflict" and space.family == "BES":
            x, y = sorted(item)
            have |= bits[(x, y)] | bits[(y, x)]
        elif rel == "disabling":
            have |= bits[item]
    return need, have


@dataclass
class DimensionTables:
    masks: np.ndarray  # (choices, n) uint64
    need: np.ndarray  # (choices,) uint64
    have: np.ndarray


def tables(space: Space) -> list[DimensionTables]:
    if space.family not in HISTORY_FAMILIES:
        raise StructureError(f"no vectorized signature for {space.family}")
    if len(space.alphabet) > MAX_EVENTS:
        raise StructureError(f"vectorized signatures support at most {MAX_EVENTS} events")
    out = []
    for dim in space.dims:
        rows, needs, haves = [], [], []
        for choice in dim.choices:
            single = space.build([choice])
            rows.append(masks_of(single, space.alphabet))
            need, have = _stability(space, choice)
            needs.append(need)
            haves.append(have)
        out.append(
            DimensionTables(
                np.array(rows, dtype=np.uint64).reshape(len(rows), len(space.alphabet)),
                np.array(needs, dtype=np.uint64),
                np.array(haves, dtype=np.uint64),
            )
        )
    return out


def combine(parts: list[DimensionTables], n: int) -> DimensionTables:
    """Product of several dimensions, first one most significant."""
    masks = np.full((1, n), np.iinfo(np.uint64).max, dtype=np.uint64)
    need = np.zeros(1, dtype=np.uint64)
    have = np.zeros(1, dtype=np.uint64)
    for p in parts:
        masks = (masks[:, None, :] & p.masks[None, :, :]).reshape(-1, n)
        need = (need[:, None] | p.need[None, :]).reshape(-1)
        have = (have[:, None] | p.have[None, :]).reshape(-1)
    return DimensionTables(masks, need, have)


def reachable(masks: np.ndarray) -> np.ndarray:
    """Bit set of reachable histories for each row of ``masks`` (shape (k, n))."""
    k, n = masks.shape
    one = np.uint64(1)
    r = np.ones(k, dtype=np.uint64)
    for h in range(1 << n):
        here = (r >> np.uint64(h)) & one
        if not here.any():
            continue
        for i in range(n):
            if h >> i & 1:
                continue
            step = here & (masks[:, i] >> np.uint64(h)) & one
            r |= step << np.uint64(h | 1 << i)
    return r


@dataclass(frozen=True)
class Signature:
    """Reachable histories, and per event the reachable histories it may follow."""

    reach: int
    enabled: tuple

    @staticmethod
    def of_structure(s: Structure, alphabet) -> "Signature":
        masks = np.array([masks_of(s, alphabet)], dtype=np.uint64)
        r = int(reachable(masks)[0])
        return Signature(r, tuple(int(m) & r for m in masks[0]))

    @staticmethod
    def of_traces(ts, alphabet) -> "Signature":
        """Signature of a trace set; ``None`` if the set is not history-determined."""
        index = {x: i for i, x in enumerate(alphabet)}
        code = lambda xs: sum(1 << index[x] for x in xs)
        by_history: dict[int, set] = {}
        for t in ts:
            by_history.setdefault(code(t), set())
        for t in ts:
            if t:
                by_history[code(t[:-1])].add(t[-1])
        tset = set(ts)
        for t in ts:
            follow = {e for e in alphabet if t + (e,) in tset}
            if follow != by_history[code(t)]:
                return None
        reach = sum(1 << h for h in by_history)
        enabled = [0] * len(alphabet)
        for h, follow in by_history.items():
            for e in follow:
                enabled[index[e]] |= 1 << h
        return Signature(reach, tuple(enabled))

    @staticmethod
    def of_configurations(configs, alphabet) -> int:
        index = {x: i for i, x in enumerate(alphabet)}
        return sum(1 << sum(1 << index[x] for x in c) for c in configs)


def target_signature(target: Structure, alphabet, kind: str):
    """What a candidate must reproduce: a :class:`Signature` (traces) or reach mask (configs)."""
    if set(target.events) != set(alphabet):
        raise StructureError("target alphabet differs from the search alphabet")
    if kind == "config":
        return Signature.of_configurations(configurations(target, "trace"), alphabet)
    if kind == "trace":
        return Signature.of_traces(traces(target), alphabet)
    raise StructureError(f"no vectorized check for {kind!r}")


def matches(block: DimensionTables, target, kind: str) -> tuple[np.ndarray, np.ndarray]:
    """(well-formed, matching) flags for every row of ``block``."""
    valid = (block.need & ~block.have) == 0
    n = block.masks.shape[1]
    fresh = np.array([_fresh_mask(n, i) for i in range(n)], dtype=np.uint64)
    masks = block.masks & fresh[None, :]
    r = reachable(masks)
    if kind == "config":
        return valid, valid & (r == np.uint64(target))
    if target is None:  # trace set not history-determined: nothing here can match
        return valid, np.zeros_like(valid)
    ok = valid & (r == np.uint64(target.reach))
    for i, m in enumerate(target.enabled):
        ok &= (masks[:, i] & r) == np.uint64(m)
    return valid, ok
