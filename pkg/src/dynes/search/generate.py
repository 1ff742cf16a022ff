"""Random well-formed structures for property tests and round-trip claims.

Every generator takes a :class:`random.Random` so that runs are reproducible
from a seed.  Densities are tuned so that small alphabets produce structures
with non-trivial behaviour (neither everything nor nothing enabled).
"""

from __future__ import annotations

import random
from itertools import combinations, permutations

from ..kernel import Bes, Dces, Des, Ebes, Ges, Ses

EVENTS = "abcde"


def alphabet(n: int) -> list[str]:
    return list(EVENTS[:n]) if n <= len(EVENTS) else [f"e{i}" for i in range(n)]


def _pairs(events):
    return list(combinations(sorted(events), 2))


def _conflict(rng: random.Random, events, p: float) -> set:
    return {pair for pair in _pairs(events) if rng.random() < p}


def random_ses(rng: random.Random, n: int, p_conflict=0.15, p_cause=0.3, p_drop=0.3) -> Ses:
    ev = alphabet(n)
    causes = {(c, t) for c in ev for t in ev if rng.random() < p_cause * (0.3 if c == t else 1)}
    drops = {(c, d, t) for c, t in sorted(causes) for d in ev if rng.random() < p_drop}
    return Ses(ev, _conflict(rng, ev, p_conflict), causes, drops)


def random_ges(rng: random.Random, n: int, p_conflict=0.15, p_cause=0.2, p_add=0.12) -> Ges:
    ev = alphabet(n)
    causes = {(c, t) for c in ev for t in ev if c != t and rng.random() < p_cause}
    adds = {(c, a, t) for c in ev for a in ev for t in ev if rng.random() < p_add}
    return Ges(ev, _conflict(rng, ev, p_conflict), causes, adds)


def random_dces(rng: random.Random, n: int, p_conflict=0.1, p_cause=0.2, p_mod=0.1) -> Dces:
    ev = alphabet(n)
    causes = {(c, t) for c in ev for t in ev if c != t and rng.random() < p_cause}
    adds = {(c, a, t) for c in ev for a in ev for t in ev if (c, t) not in causes and rng.random() < p_mod}
    addable = causes | {(c, t) for c, _, t in adds}
    drops = {(c, d, t) for c, t in sorted(addable) for d in ev if rng.random() < p_mod * 2}
    return Dces(ev, _conflict(rng, ev, p_conflict), causes, drops, adds)


def random_ssdc(rng: random.Random, n: int, **kw) -> Dces:
    """A DCES in which no causal pair is both added and dropped."""
    d = random_dces(rng, n, **kw)
    added = {(c, t) for c, _, t in d.adds}
    drops = {(c, m, t) for c, m, t in d.drops if (c, t) not in added}
    return Dces(d.events, d.conflict, d.causes, drops, d.adds)


def random_des(rng: random.Random, n: int, p_conflict=0.15, max_bundles=2, p_member=0.45, cls=Des) -> Des:
    ev = alphabet(n)
    conflict = _conflict(rng, ev, p_conflict)
    bundles = set()
    for t in ev:
        for _ in range(rng.randint(0, max_bundles)):
            members = frozenset(x for x in ev if x != t and rng.random() < p_member)
            if members:
                bundles.add((members, t))
    return cls(ev, conflict, bundles)


def random_bes(rng: random.Random, n: int, **kw) -> Bes:
    """Bundles are drawn among pairwise-conflicting groups, so stability holds."""
    d = random_des(rng, n, **kw)
    bundles = set()
    for members, t in d.bundles:
        keep: list[str] = []
        for x in sorted(members):
            if all(frozenset((x, y)) in d.conflict for y in keep):
                keep.append(x)
        bundles.add((frozenset(keep), t))
    return Bes(d.events, d.conflict, bundles)


def random_ebes(rng: random.Random, n: int, p_disable=0.2, max_bundles=2, p_member=0.45) -> Ebes:
    ev = alphabet(n)
    dis = {(x, y) for x, y in permutations(ev, 2) if rng.random() < p_disable}
    bundles = set()
    for t in ev:
        for _ in range(rng.randint(0, max_bundles)):
            keep: list[str] = []
            for x in ev:
                if x != t and rng.random() < p_member and all((x, y) in dis and (y, x) in dis for y in keep):
                    keep.append(x)
            if keep:
                bundles.add((frozenset(keep), t))
    return Ebes(ev, dis, bundles)


def mutate_ses(rng: random.Random, s: Ses) -> Ses:
    """Toggle one relation element while keeping ``s`` well-formed."""
    ev = sorted(s.events)
    conflict, causes, drops = set(s.conflict), set(s.causes), set(s.drops)
    kind = rng.choice(["conflict", "cause", "drop"] if causes else ["conflict", "cause"])
    if kind == "conflict" and len(ev) >= 2:
        pair = frozenset(rng.sample(ev, 2))
        conflict ^= {pair}
    elif kind == "drop":
        c, t = rng.choice(sorted(causes))
        drops ^= {(c, rng.choice(ev), t)}
    else:
        pair = (rng.choice(ev), rng.choice(ev))
        if pair in causes:
            causes.discard(pair)
            drops = {x for x in drops if (x[0], x[2]) != pair}
        else:
            causes.add(pair)
    return Ses(ev, conflict, causes, drops)
