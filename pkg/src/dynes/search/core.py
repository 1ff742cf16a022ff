"""Search specifications, enumeration and matching against a target structure."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import prod
from typing import Callable, Iterator, Optional, Sequence, Tuple

import numpy as np

from ..equiv import equivalent
from ..kernel import Structure, StructureError, validate
from . import fast
from .space import Choice, DimKey, Space

DEFAULT_MAX_STRUCTURES = 10**7
DEFAULT_MAX_SECONDS = 120.0
BLOCK = 1 << 15


@dataclass(frozen=True)
class Filter:
    """A pruning rule: keeps only some choices of some dimensions.

    ``justification`` names the fact that makes the rule sound; every filter
    has a companion test showing that excluded structures fail the match.
    """

    name: str
    justification: str
    keep: Callable[[DimKey, Choice], bool] = field(compare=False)

    def admits(self, space: Space, s: Structure) -> bool:
        groups = space.choices_of(s)
        return all(self.keep(key, choice) for key, choice in groups.items())


@dataclass(frozen=True)
class SearchSpec:
    family: str
    alphabet: Tuple[str, ...]
    constraints: Tuple[Filter, ...] = ()
    max_structures: int = DEFAULT_MAX_STRUCTURES
    max_seconds: float = DEFAULT_MAX_SECONDS

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphabet", tuple(sorted(self.alphabet)))
        object.__setattr__(self, "constraints", tuple(self.constraints))

    def full_space(self) -> Space:
        return Space.full(self.family, self.alphabet)

    def space(self) -> Space:
        filters = self.constraints
        return self.full_space().narrowed(lambda k, c: all(f.keep(k, c) for f in filters))

    def without(self, name: str) -> "SearchSpec":
        return SearchSpec(
            self.family,
            self.alphabet,
            tuple(f for f in self.constraints if f.name != name),
            self.max_structures,
            self.max_seconds,
        )


FOUND, EXHAUSTED, BUDGET = "found", "exhausted-none", "budget-exceeded"


@dataclass(frozen=True)
class SearchOutcome:
    """``status`` is ``found``, ``exhausted-none`` or ``budget-exceeded``.

    ``explored`` counts the indices examined (in enumeration order, up to and
    including a match); ``wellformed`` how many of those were valid structures.
    """

    status: str
    explored: int
    wellformed: int
    structure: Optional[Structure] = None
    index: Optional[int] = None
    seconds: float = field(default=0.0, compare=False)

    @property
    def found(self) -> bool:
        return self.status == FOUND


def enumerate_structures(spec: SearchSpec, start: int = 0, stop: Optional[int] = None) -> Iterator[Structure]:
    """Every well-formed structure of the (pruned) space with index in ``[start, stop)``."""
    space = spec.space()
    stop = space.size if stop is None else min(stop, space.size)
    if stop - start > spec.max_structures:
        raise StructureError(f"{stop - start} structures exceed the budget of {spec.max_structures}")
    for _, s in space.iter_structures(start, stop):
        if validate(s).ok:
            yield s


def partition(size: int, workers: int) -> list[tuple[int, int]]:
    """Split ``range(size)`` into ``workers`` contiguous index ranges."""
    step, extra = divmod(size, workers)
    out, lo = [], 0
    for w in range(workers):
        hi = lo + step + (1 if w < extra else 0)
        out.append((lo, hi))
        lo = hi
    return out


def count_wellformed(spec: SearchSpec, start: int = 0, stop: Optional[int] = None) -> int:
    space = spec.space()
    if space.family in fast.HISTORY_FAMILIES:
        total = 0
        for lo, hi, block in _blocks(space, start, stop):
            total += int(((block.need & ~block.have) == 0).sum())
        return total
    return sum(1 for _ in enumerate_structures(spec, start, stop))


def _split(space: Space) -> int:
    """Number of leading (outer) dimensions; the rest are tabulated at once."""
    radices = space.radices
    inner, k = 1, len(radices)
    while k > 0 and inner * radices[k - 1] <= BLOCK:
        inner *= radices[k - 1]
        k -= 1
    return k


def _blocks(space: Space, start: int = 0, stop: Optional[int] = None):
    """Yield ``(lo, hi, tables)`` covering indices ``[start, stop)`` in order."""
    stop = space.size if stop is None else min(stop, space.size)
    if start >= stop:
        return
    tabs = fast.tables(space)
    n = len(space.alphabet)
    k = _split(space)
    outer_radices = space.radices[:k]
    inner = fast.combine(tabs[k:], n)
    inner_size = len(inner.need)
    first, last = start // inner_size, (stop - 1) // inner_size
    for outer_index in range(first, last + 1):
        digits, rest = [], outer_index
        for r in reversed(outer_radices):
            rest, d = divmod(rest, r)
            digits.append(d)
        digits.reverse()
        outer = fast.combine(
            [
                fast.DimensionTables(t.masks[d : d + 1], t.need[d : d + 1], t.have[d : d + 1])
                for t, d in zip(tabs[:k], digits)
            ],
            n,
        )
        block = fast.DimensionTables(inner.masks & outer.masks, inner.need | outer.need, inner.have | outer.have)
        base = outer_index * inner_size
        lo, hi = max(start, base), min(stop, base + inner_size)
        if lo > base or hi < base + inner_size:
            sl = slice(lo - base, hi - base)
            block = fast.DimensionTables(block.masks[sl], block.need[sl], block.have[sl])
        yield lo, hi, block


def _fast_path(spec: SearchSpec, kind: str, target: Structure) -> bool:
    return (
        kind in ("trace", "config")
        and spec.family in fast.HISTORY_FAMILIES
        and len(spec.alphabet) <= fast.MAX_EVENTS
    )


def find_match(
    spec: SearchSpec,
    target: Structure,
    kind: str = "trace",
    start: int = 0,
    stop: Optional[int] = None,
) -> SearchOutcome:
    """First structure of the space (in index order) that is ``kind``-equivalent to ``target``.

    A match found by the vectorized path is re-checked with :func:`equivalent`.
    """
    t0 = time.monotonic()
    space = spec.space()
    stop = space.size if stop is None else min(stop, space.size)
    limit = min(stop, start + spec.max_structures)
    explored = wellformed = 0

    def outcome(status, structure=None, index=None):
        return SearchOutcome(status, explored, wellformed, structure, index, time.monotonic() - t0)

    if _fast_path(spec, kind, target):
        goal = fast.target_signature(target, spec.alphabet, kind)
        for lo, hi, block in _blocks(space, start, limit):
            valid, ok = fast.matches(block, goal, kind)
            hits = np.flatnonzero(ok)
            if hits.size:
                first = int(hits[0])
                explored += first + 1
                wellformed += int(valid[: first + 1].sum())
                s = space.decode(lo + first)
                if not equivalent(s, target, kind).equal:
                    raise AssertionError(f"vectorized match at index {lo + first} not confirmed by semantics")
                return outcome(FOUND, s, lo + first)
            explored += hi - lo
            wellformed += int(valid.sum())
            if time.monotonic() - t0 > spec.max_seconds:
                return outcome(BUDGET)
    else:
        for index in range(start, limit):
            s = space.decode(index)
            explored += 1
            if not validate(s).ok:
                continue
            wellformed += 1
            if equivalent(s, target, kind).equal:
                return outcome(FOUND, s, index)
            if explored % 256 == 0 and time.monotonic() - t0 > spec.max_seconds:
                return outcome(BUDGET)
    if limit < stop:
        return outcome(BUDGET)
    return outcome(EXHAUSTED)


def _find_range(args):
    spec, target, kind, lo, hi = args
    return find_match(spec, target, kind, lo, hi)


def find_match_parallel(spec: SearchSpec, target: Structure, kind: str = "trace", workers: int = 2) -> SearchOutcome:
    """Run :func:`find_match` on ``workers`` index ranges and merge the results.

    The merged outcome reports the match with the smallest index; counts are
    summed over all ranges, so they equal a sequential run only when no match
    exists.
    """
    size = spec.space().size
    jobs = [(spec, target, kind, lo, hi) for lo, hi in partition(size, workers) if hi > lo]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_find_range, jobs))
    return merge(parts)


def merge(parts: Sequence[SearchOutcome]) -> SearchOutcome:
    explored = sum(p.explored for p in parts)
    wellformed = sum(p.wellformed for p in parts)
    seconds = max((p.seconds for p in parts), default=0.0)
    found = [p for p in parts if p.found]
    if found:
        best = min(found, key=lambda p: p.index)
        return SearchOutcome(FOUND, explored, wellformed, best.structure, best.index, seconds)
    status = BUDGET if any(p.status == BUDGET for p in parts) else EXHAUSTED
    return SearchOutcome(status, explored, wellformed, None, None, seconds)


def closed_form_count(family: str, n: int) -> int:
    """Number of well-formed structures on ``n`` events, derived by counting choices.

    BES and EBES are not products (stability couples dimensions) and have no
    closed form here.
    """
    pairs = n * (n - 1) // 2
    if family == "SES":
        return 2**pairs * (1 + 2**n) ** (n * n)
    if family == "GES":
        return 2**pairs * 2 ** (n * n) * 2 ** (n**3)
    if family == "DCES":
        return 2**pairs * (1 + 4**n) ** (n * n)
    if family == "DES":
        return 2**pairs * 2 ** (n * 2 ** (n - 1)) if n else 1
    raise StructureError(f"no closed-form count for {family}")


def space_size(spec: SearchSpec) -> int:
    return prod(spec.space().radices)
