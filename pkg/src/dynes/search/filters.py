"""Pruning filters for the counterexample searches.

Each filter removes choices that provably cannot appear in a match for the
search it belongs to.  The ``justification`` strings state the reason; the
test suite checks every filter by sampling near-miss structures (an admitted
structure with one dimension switched to an excluded choice) and confirming
that none of them matches the target.
"""

from __future__ import annotations

import random
from typing import Iterator

from ..kernel import Structure, validate
from .core import Filter, SearchSpec
from .space import Choice, DimKey


def _rels(choice: Choice, rel: str) -> list:
    return [item for r, item in choice if r == rel]


def no_conflict() -> Filter:
    return Filter(
        "no-conflict",
        "the target has a configuration containing every event, so no two events may conflict",
        lambda key, choice: key[0] != "conflict" or not choice,
    )


def conflict_only(pairs) -> Filter:
    allowed = {frozenset(p) for p in pairs}
    return Filter(
        "conflict-only-" + "-".join("".join(sorted(p)) for p in sorted(allowed, key=sorted)),
        "every other pair of events occurs together in some configuration of the target",
        lambda key, choice: key[0] != "conflict" or not choice or frozenset(key[1:]) in allowed,
    )


def no_initial_causes(targets) -> Filter:
    """Events that the target can perform first need no (undroppable) initial cause."""
    targets = frozenset(targets)

    def keep(key: DimKey, choice: Choice) -> bool:
        if key[0] == "causes" and key[1] in targets:  # GES: whole cause set of a target
            return not choice
        if key[0] in ("cause", "pair") and key[2] in targets:  # SES / DCES pair
            return not _rels(choice, "causes")
        return True

    return Filter(
        "no-initial-causes-" + "".join(sorted(targets)),
        "each of these events occurs alone in the target, i.e. is enabled in the empty history",
        keep,
    )


def initial_causes_among(target: str, options) -> Filter:
    options = {frozenset(o) for o in options}

    def keep(key: DimKey, choice: Choice) -> bool:
        if key == ("causes", target):
            return frozenset(c for c, _ in _rels(choice, "causes")) in options
        return True

    return Filter(
        f"initial-causes-{target}",
        f"{target} is not a configuration by itself, occurs with every other event, and not without them all",
        keep,
    )


def effective_modifiers() -> Filter:
    """Drop/add triples whose modifier is the cause or the target have no effect."""

    def keep(key: DimKey, choice: Choice) -> bool:
        for rel in ("adds", "drops"):
            for c, m, t in _rels(choice, rel):
                if m in (c, t):
                    return False
        return True

    return Filter(
        "effective-modifiers",
        "a modifier equal to the cause or the target never changes a cause set",
        keep,
    )


def no_self_cause(target: str) -> Filter:
    """SES: ``target`` is not its own cause (with or without droppers)."""

    def keep(key: DimKey, choice: Choice) -> bool:
        return key != ("cause", target, target) or not choice

    return Filter(
        f"no-self-cause-{target}",
        f"{target} is enabled by a conjunction of one clause per cause; the target needs more prime "
        "clauses than the other causes of the alphabet can supply, and a self-cause only adds a clause "
        "that is not among them",
        keep,
    )


def no_add_into(target: str, adders) -> Filter:
    adders = frozenset(adders)

    def keep(key: DimKey, choice: Choice) -> bool:
        return not any(t == target and m in adders and m != c for c, m, t in _rels(choice, "adds"))

    return Filter(
        f"no-add-into-{target}",
        f"{target} occurs in one step together with each of these adders, which an added cause forbids",
        keep,
    )


def sample_excluded(spec: SearchSpec, name: str, rng: random.Random, count: int) -> Iterator[Structure]:
    """Near-miss structures excluded by filter ``name`` but admitted by all others.

    Each sample is an admitted structure of ``spec`` with one dimension switched
    to a choice that only ``name`` rejects.
    """
    (flt,) = [f for f in spec.constraints if f.name == name]
    others = [f for f in spec.constraints if f.name != name]
    full = spec.full_space()
    admitted = spec.space()
    excluded = []
    for pos, dim in enumerate(full.dims):
        for choice in dim.choices:
            if not flt.keep(dim.key, choice) and all(f.keep(dim.key, choice) for f in others):
                excluded.append((pos, choice))
    if not excluded:
        return
    produced = attempts = 0
    while produced < count and attempts < 50 * count:
        attempts += 1
        digits = [rng.randrange(r) for r in admitted.radices]
        choices = [d.choices[k] for d, k in zip(admitted.dims, digits)]
        pos, choice = rng.choice(excluded)
        choices[pos] = choice
        s = full.build(choices)
        if validate(s).ok:
            produced += 1
            yield s
