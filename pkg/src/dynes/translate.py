"""Translations between structure families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .kernel import Bes, Dces, Des, Ebes, Ges, Rces, Ses, Structure, StructureError, droppers, require_valid
from .semantics import transition_graph

MAX_RCES_EVENTS = 6


class TranslationError(StructureError):
    pass


@dataclass(frozen=True)
class FreshNamePolicy:
    """How auxiliary events are named: ``prefix`` followed by 1, 2, ...

    Bundles are numbered in order of (target, sorted members); numbers whose
    name is already taken are skipped.
    """

    prefix: str = "_x"

    def names(self, taken, count: int) -> list[str]:
        out, i = [], 1
        while len(out) < count:
            name = f"{self.prefix}{i}"
            if name not in taken:
                out.append(name)
            i += 1
        return out


DEFAULT_POLICY = FreshNamePolicy()


def _ordered_bundles(s) -> list:
    return sorted(s.bundles, key=lambda b: (b[1], sorted(b[0])))


def to_rces(s: Ses | Ges, max_events: int = MAX_RCES_EVENTS) -> Rces:
    """RCES whose enablings are ``X |- Z`` for every step ``X -> Y`` and ``Z <= Y``."""
    if len(s.events) > max_events:
        raise TranslationError(f"to_rces materializes 2^n enablings; {len(s.events)} events exceed {max_events}")
    g = transition_graph(s)
    succ: dict = {}
    for x, y in g.edges:
        if not x <= y:
            raise TranslationError(f"step {sorted(x)} -> {sorted(y)} shrinks the configuration")
        succ.setdefault(x, set()).add(y)
    for x, ys in succ.items():
        for y in ys:
            for x2 in _between(x, y):
                for y2 in _between(x2, y):
                    if y2 not in succ.get(x2, ()):
                        raise TranslationError(
                            f"steps do not interpolate: {sorted(x)} -> {sorted(y)} but not {sorted(x2)} -> {sorted(y2)}"
                        )
    enablings = {(x, z) for x, ys in succ.items() for y in ys for z in _between(frozenset(), y)}
    return Rces(s.events, enablings)


def _between(lo: frozenset, hi: frozenset):
    extra = sorted(hi - lo)
    for k in range(len(extra) + 1):
        for combo in combinations(extra, k):
            yield lo | frozenset(combo)


def ses_to_des(s: Ses) -> Des:
    """One bundle ``{x} + droppers(x, y)`` per initial cause ``x -> y``.

    A target inside its own bundle can never precede itself, so it is left out;
    a self-cause without other droppers becomes an empty bundle (impossible event).
    """
    require_valid(s)
    bundles = {(frozenset({x} | droppers(s, x, y)) - {y}, y) for x, y in s.causes}
    return Des(s.events, s.conflict, bundles)


def des_to_ses(d: Des, policy: FreshNamePolicy = DEFAULT_POLICY) -> Ses:
    """Replace each bundle ``X |-> e`` by a fresh impossible cause of ``e`` that ``X`` drops."""
    require_valid(d)
    bundles = _ordered_bundles(d)
    fresh = policy.names(d.events, len(bundles))
    causes, drops = set(), set()
    for x, (members, target) in zip(fresh, bundles):
        causes |= {(x, target), (x, x)}
        drops |= {(x, m, target) for m in members}
    return Ses(d.events | set(fresh), d.conflict, causes, drops)


def embed(s: Ses | Ges) -> Dces:
    """View a SES or GES as a DCES.

    Adds of a cause that is already initial are redundant in a GES and are not
    carried over, since a DCES may not add an initial cause.
    """
    require_valid(s)
    if isinstance(s, Ses):
        return Dces(s.events, s.conflict, s.causes, s.drops, ())
    if isinstance(s, Ges):
        adds = {(c, a, t) for c, a, t in s.adds if (c, t) not in s.causes}
        return Dces(s.events, s.conflict, s.causes, (), adds)
    raise TranslationError(f"cannot embed a {s.family}")


def bes_as_ebes(b: Bes) -> Ebes:
    """A BES read as an EBES: every conflict becomes a mutual disabling."""
    dis = set()
    for pair in b.conflict:
        x, y = sorted(pair)
        dis |= {(x, y), (y, x)}
    return Ebes(b.events, dis, b.bundles)


def ebes_to_dces(x: Ebes, policy: FreshNamePolicy = DEFAULT_POLICY) -> Dces:
    """Poset-preserving translation of an EBES into an EBDC."""
    if isinstance(x, Bes):
        x = bes_as_ebes(x)
    require_valid(x)
    bundles = _ordered_bundles(x)
    fresh = policy.names(x.events, len(bundles))
    causes, drops, conflict = set(), set(), set()
    for f, (members, target) in zip(fresh, bundles):
        causes |= {(f, target), (f, f)}
        drops |= {(f, m, target) for m in members}
        conflict |= {(f, m) for m in members}
    conflict |= {(a, b) for a, b in x.disabling if (b, a) in x.disabling}
    adds = {(a, b, a) for a, b in x.disabling if (b, a) not in x.disabling}
    return Dces(x.events | set(fresh), conflict, causes, drops, adds)


TRANSLATIONS = {
    "rces": to_rces,
    "des": ses_to_des,
    "ses": des_to_ses,
    "dces": None,  # embed or ebes_to_dces, chosen by source family
    "ebes": bes_as_ebes,
}


def translate(s: Structure, to: str) -> Structure:
    """Dispatch by target family name (``rces``, ``des``, ``ses``, ``dces``, ``ebes``)."""
    to = to.lower()
    if to == "rces" and isinstance(s, (Ses, Ges)):
        return to_rces(s)
    if to == "des" and isinstance(s, Ses):
        return ses_to_des(s)
    if to == "ses" and isinstance(s, Des) and not isinstance(s, Bes):
        return des_to_ses(s)
    if to == "dces" and isinstance(s, (Ses, Ges)):
        return embed(s)
    if to == "dces" and isinstance(s, (Ebes, Bes)):
        return ebes_to_dces(s)
    if to == "ebes" and isinstance(s, Bes):
        return bes_as_ebes(s)
    raise TranslationError(f"no translation from {s.family} to {to.upper()}")
