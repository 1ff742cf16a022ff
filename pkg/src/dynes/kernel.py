"""Event alphabets, the seven structure families, validation and DCES subclasses.

All structures are immutable values over a finite set of event names.  Relations
are stored as frozensets so that two structures are equal exactly when they
denote the same tuple of relations.

Triples for shrinking and growing causality are always ``(cause, modifier,
target)``: ``(c, d, t)`` in ``drops`` means that the occurrence of ``d``
removes ``c`` from the causes of ``t``; ``(c, a, t)`` in ``adds`` means that
the occurrence of ``a`` makes ``c`` a cause of ``t``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import ClassVar, FrozenSet, Iterable, Tuple, Union

EVENT_NAME = re.compile(r"^[A-Za-z0-9_]+$")

Pair = Tuple[str, str]
Triple = Tuple[str, str, str]
Bundle = Tuple[FrozenSet[str], str]
Enabling = Tuple[FrozenSet[str], FrozenSet[str]]


class StructureError(ValueError):
    """Raised when an operation receives a structure it cannot handle."""


def _events(events: Iterable[str] | str) -> FrozenSet[str]:
    if isinstance(events, str):
        events = events.split()
    return frozenset(events)


def _conflict(pairs: Iterable[Iterable[str]]) -> FrozenSet[FrozenSet[str]]:
    return frozenset(frozenset(p) for p in pairs)


def _tuples(items: Iterable[Iterable[str]], arity: int) -> frozenset:
    out = set()
    for item in items:
        item = tuple(item)
        if len(item) != arity:
            raise StructureError(f"expected a {arity}-tuple, got {item!r}")
        out.add(item)
    return frozenset(out)


def _bundles(items: Iterable[Tuple[Iterable[str], str]]) -> FrozenSet[Bundle]:
    return frozenset((frozenset(members), target) for members, target in items)


def _enablings(items) -> FrozenSet[Enabling]:
    return frozenset((frozenset(w), frozenset(z)) for w, z in items)


def sorted_events(events: Iterable[str]) -> list[str]:
    return sorted(events)


class _Base:
    family: ClassVar[str]
    events: FrozenSet[str]

    def _freeze(self, **converted) -> None:
        for name, value in converted.items():
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class Ses(_Base):
    """Shrinking-causality structure ``(E, #, ->, drops)``."""

    events: FrozenSet[str] = frozenset()
    conflict: FrozenSet[FrozenSet[str]] = frozenset()
    causes: FrozenSet[Pair] = frozenset()
    drops: FrozenSet[Triple] = frozenset()
    family: ClassVar[str] = "SES"

    def __post_init__(self) -> None:
        self._freeze(
            events=_events(self.events),
            conflict=_conflict(self.conflict),
            causes=_tuples(self.causes, 2),
            drops=_tuples(self.drops, 3),
        )


@dataclass(frozen=True)
class Ges(_Base):
    """Growing-causality structure ``(E, #, ->, adds)``."""

    events: FrozenSet[str] = frozenset()
    conflict: FrozenSet[FrozenSet[str]] = frozenset()
    causes: FrozenSet[Pair] = frozenset()
    adds: FrozenSet[Triple] = frozenset()
    family: ClassVar[str] = "GES"

    def __post_init__(self) -> None:
        self._freeze(
            events=_events(self.events),
            conflict=_conflict(self.conflict),
            causes=_tuples(self.causes, 2),
            adds=_tuples(self.adds, 3),
        )


@dataclass(frozen=True)
class Dces(_Base):
    """Dynamic-causality structure ``(E, #, ->, drops, adds)``."""

    events: FrozenSet[str] = frozenset()
    conflict: FrozenSet[FrozenSet[str]] = frozenset()
    causes: FrozenSet[Pair] = frozenset()
    drops: FrozenSet[Triple] = frozenset()
    adds: FrozenSet[Triple] = frozenset()
    family: ClassVar[str] = "DCES"

    def __post_init__(self) -> None:
        self._freeze(
            events=_events(self.events),
            conflict=_conflict(self.conflict),
            causes=_tuples(self.causes, 2),
            drops=_tuples(self.drops, 3),
            adds=_tuples(self.adds, 3),
        )


@dataclass(frozen=True)
class Des(_Base):
    """Dual event structure: symmetric conflict plus bundles ``X |-> e``."""

    events: FrozenSet[str] = frozenset()
    conflict: FrozenSet[FrozenSet[str]] = frozenset()
    bundles: FrozenSet[Bundle] = frozenset()
    family: ClassVar[str] = "DES"

    def __post_init__(self) -> None:
        self._freeze(
            events=_events(self.events),
            conflict=_conflict(self.conflict),
            bundles=_bundles(self.bundles),
        )


@dataclass(frozen=True)
class Bes(Des):
    """Bundle event structure: a DES whose bundle members pairwise conflict."""

    family: ClassVar[str] = "BES"


@dataclass(frozen=True)
class Ebes(_Base):
    """Extended bundle event structure with an asymmetric disabling relation.

    ``(x, y)`` in ``disabling`` means that ``y`` can never precede ``x``:
    once ``y`` has occurred, ``x`` is no longer possible.
    """

    events: FrozenSet[str] = frozenset()
    disabling: FrozenSet[Pair] = frozenset()
    bundles: FrozenSet[Bundle] = frozenset()
    family: ClassVar[str] = "EBES"

    def __post_init__(self) -> None:
        self._freeze(
            events=_events(self.events),
            disabling=_tuples(self.disabling, 2),
            bundles=_bundles(self.bundles),
        )


@dataclass(frozen=True)
class Rces(_Base):
    """Structure for resolvable conflict: an enabling relation ``W |- Z``."""

    events: FrozenSet[str] = frozenset()
    enablings: FrozenSet[Enabling] = frozenset()
    family: ClassVar[str] = "RCES"

    def __post_init__(self) -> None:
        self._freeze(events=_events(self.events), enablings=_enablings(self.enablings))


Structure = Union[Ses, Ges, Dces, Des, Bes, Ebes, Rces]

FAMILIES: dict[str, type] = {
    cls.family: cls for cls in (Ses, Ges, Dces, Des, Bes, Ebes, Rces)
}


def has_causes(s: Structure) -> bool:
    return isinstance(s, (Ses, Ges, Dces))


def drops_of(s: Structure) -> FrozenSet[Triple]:
    return getattr(s, "drops", frozenset())


def adds_of(s: Structure) -> FrozenSet[Triple]:
    return getattr(s, "adds", frozenset())


def droppers(s: Structure, cause: str, target: str) -> set[str]:
    return {d for c, d, t in drops_of(s) if c == cause and t == target}


def adders(s: Structure, cause: str, target: str) -> set[str]:
    return {a for c, a, t in adds_of(s) if c == cause and t == target}


def in_conflict(s: Structure, x: str, y: str) -> bool:
    return frozenset((x, y)) in s.conflict


def bundles_of(s: Structure, target: str) -> list[FrozenSet[str]]:
    """Bundles pointing at ``target``, in deterministic order."""
    return sorted((x for x, t in s.bundles if t == target), key=sorted)


# --------------------------------------------------------------------------- #
# Validation
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class ValidationReport:
    violations: Tuple[Tuple[str, tuple], ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def rules(self) -> set[str]:
        return {rule for rule, _ in self.violations}


def _mentioned(s: Structure) -> set[str]:
    names: set[str] = set()
    for pair in getattr(s, "conflict", ()):
        names |= pair
    for rel in ("causes", "drops", "adds", "disabling"):
        for item in getattr(s, rel, ()):
            names.update(item)
    for members, target in getattr(s, "bundles", ()):
        names |= members
        names.add(target)
    for w, z in getattr(s, "enablings", ()):
        names |= w | z
    return names


def validate(s: Structure) -> ValidationReport:
    """Report every violated well-formedness rule of ``s`` (never raises)."""
    out: list[tuple[str, tuple]] = []
    for name in sorted(s.events):
        if not isinstance(name, str) or not EVENT_NAME.match(name):
            out.append(("event-name", (name,)))
    for name in sorted(_mentioned(s) - s.events):
        out.append(("unknown-event", (name,)))

    for pair in sorted(getattr(s, "conflict", ()), key=sorted):
        if len(pair) != 2:
            out.append(("irreflexive", tuple(pair) * 2))

    if isinstance(s, Ses):
        for c, d, t in sorted(s.drops):
            if (c, t) not in s.causes:
                out.append(("drop-without-cause", (c, d, t)))

    if isinstance(s, Dces):
        for c, d, t in sorted(s.drops):
            if (c, t) not in s.causes and not adders(s, c, t):
                out.append(("drop-of-absent-cause", (c, d, t)))
        for c, a, t in sorted(s.adds):
            if (c, t) in s.causes:
                out.append(("add-of-initial-cause", (c, a, t)))

    if isinstance(s, Ebes):
        for x, y in sorted(s.disabling):
            if x == y:
                out.append(("irreflexive", (x, y)))

    for members, target in sorted(getattr(s, "bundles", ()), key=lambda b: (b[1], sorted(b[0]))):
        if target in members:
            out.append(("bundle-contains-target", (tuple(sorted(members)), target)))
        for x, y in combinations(sorted(members), 2):
            if isinstance(s, Bes) and not in_conflict(s, x, y):
                out.append(("stability", (tuple(sorted(members)), target, x, y)))
            if isinstance(s, Ebes) and not ((x, y) in s.disabling and (y, x) in s.disabling):
                out.append(("stability", (tuple(sorted(members)), target, x, y)))
    return ValidationReport(tuple(out))


def require_valid(s: Structure) -> None:
    report = validate(s)
    if not report.ok:
        rule, items = report.violations[0]
        raise StructureError(f"invalid {s.family}: {rule} {items}")


# --------------------------------------------------------------------------- #
# DCES subclasses
# --------------------------------------------------------------------------- #


@dataclass(frozen=True)
class SubclassFlags:
    is_ssdc: bool
    is_ebdc: bool


def classify_dces(d: Dces) -> SubclassFlags:
    """Decide membership in the single-state (SSDC) and EBES-like (EBDC) subclasses."""
    if not isinstance(d, Dces):
        raise StructureError(f"classify_dces needs a DCES, got {d.family}")
    require_valid(d)
    added = {(c, t) for c, _, t in d.adds}
    dropped = {(c, t) for c, _, t in d.drops}
    is_ssdc = not (added & dropped)
    is_ebdc = is_ssdc and all(c == t for c, _, t in d.adds)
    if is_ebdc:
        for c, t in dropped:
            group = sorted({c} | droppers(d, c, t))
            if any(not in_conflict(d, x, y) for x, y in combinations(group, 2)):
                is_ebdc = False
                break
    return SubclassFlags(is_ssdc=is_ssdc, is_ebdc=is_ebdc)
