"""Structure spaces as mixed-radix products of independent dimensions.

Every relation element of a family belongs to exactly one *dimension*, and a
structure is one choice per dimension.  Dimensions are grouped so that the
family's well-formedness rules are either local to a dimension (and so baked
into its choice list) or checked after decoding (bundle stability):

* conflict: one dimension per unordered pair (absent / present);
* SES: one dimension per ``(cause, target)`` pair: absent, or present with any
  set of droppers;
* GES: one dimension per target (its set of initial causes) and one per
  ``(cause, adder, target)`` triple;
* DCES: one dimension per ``(cause, target)`` pair, joint over initial-ness,
  adders and droppers, restricted to the well-formed combinations;
* DES/BES/EBES: one dimension per target holding its whole set of bundles
  (empty bundles included), plus EBES disabling per ordered pair.

Index ``0`` is the structure with no relations; the first dimension is the
most significant digit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import prod
from typing import Callable, FrozenSet, Iterator, Sequence, Tuple

from ..kernel import FAMILIES, Structure, StructureError

Item = Tuple[str, object]  # (relation name, relation element)
Choice = FrozenSet[Item]
DimKey = tuple

SEARCHABLE = ("SES", "GES", "DCES", "DES", "BES", "EBES")


def subsets(items: Sequence) -> list[frozenset]:
    items = sorted(items)
    return [frozenset(c) for k in range(len(items) + 1) for c in combinations(items, k)]


@dataclass(frozen=True)
class Dimension:
    key: DimKey
    choices: Tuple[Choice, ...]

    def __len__(self) -> int:
        return len(self.choices)


def _conflict_dims(ev) -> list[Dimension]:
    return [
        Dimension(("conflict", x, y), (frozenset(), frozenset({("conflict", frozenset((x, y)))})))
        for x, y in combinations(ev, 2)
    ]


def _ses_dims(ev) -> list[Dimension]:
    dims = _conflict_dims(ev)
    for c, t in product(ev, ev):
        choices = [frozenset()]
        for ds in subsets(ev):
            choices.append(frozenset({("causes", (c, t))} | {("drops", (c, d, t)) for d in ds}))
        dims.append(Dimension(("cause", c, t), tuple(choices)))
    return dims


def _ges_dims(ev) -> list[Dimension]:
    dims = _conflict_dims(ev)
    for t in ev:
        dims.append(
            Dimension(("causes", t), tuple(frozenset(("causes", (c, t)) for c in cs) for cs in subsets(ev)))
        )
    for c, a, t in product(ev, ev, ev):
        dims.append(Dimension(("add", c, a, t), (frozenset(), frozenset({("adds", (c, a, t))}))))
    return dims


def _dces_pair_choices(ev, c, t) -> tuple:
    choices = [frozenset()]
    drops = lambda ds: {("drops", (c, d, t)) for d in ds}
    for ds in subsets(ev):  # initial cause, possibly dropped
        choices.append(frozenset({("causes", (c, t))} | drops(ds)))
    for adders in subsets(ev)[1:]:  # added cause, possibly dropped
        for ds in subsets(ev):
            choices.append(frozenset({("adds", (c, a, t)) for a in adders} | drops(ds)))
    return tuple(choices)


def _dces_dims(ev) -> list[Dimension]:
    dims = _conflict_dims(ev)
    for c, t in product(ev, ev):
        dims.append(Dimension(("pair", c, t), _dces_pair_choices(ev, c, t)))
    return dims


def _bundle_dims(ev) -> list[Dimension]:
    dims = []
    for t in ev:
        candidates = subsets([x for x in ev if x != t])
        dims.append(
            Dimension(
                ("bundles", t),
                tuple(frozenset(("bundles", (x, t)) for x in group) for group in subsets(candidates)),
            )
        )
    return dims


def _des_dims(ev) -> list[Dimension]:
    return _conflict_dims(ev) + _bundle_dims(ev)


def _ebes_dims(ev) -> list[Dimension]:
    dims = [
        Dimension(("disabling", x, y), (frozenset(), frozenset({("disabling", (x, y))})))
        for x, y in permutations(ev, 2)
    ]
    return dims + _bundle_dims(ev)


_BUILDERS: dict[str, Callable] = {
    "SES": _ses_dims,
    "GES": _ges_dims,
    "DCES": _dces_dims,
    "DES": _des_dims,
    "BES": _des_dims,
    "EBES": _ebes_dims,
}


def owner(family: str, rel: str, item) -> DimKey:
    """The dimension that a relation element belongs to."""
    if rel == "conflict":
        return ("conflict", *sorted(item))
    if rel == "disabling":
        return ("disabling", *item)
    if rel == "bundles":
        return ("bundles", item[1])
    if family == "SES":
        return ("cause", item[0], item[-1])
    if family == "GES":
        return ("causes", item[1]) if rel == "causes" else ("add", *item)
    if family == "DCES":
        return ("pair", item[0], item[-1])
    raise StructureError(f"no dimension for {rel} in {family}")


def items_of(s: Structure) -> list[Item]:
    out: list[Item] = []
    for rel in ("conflict", "causes", "drops", "adds", "bundles", "disabling"):
        for item in getattr(s, rel, ()):
            out.append((rel, item))
    return out


@dataclass(frozen=True)
class Space:
    """The product of ``dims`` over a fixed alphabet for one family."""

    family: str
    alphabet: Tuple[str, ...]
    dims: Tuple[Dimension, ...]

    @staticmethod
    def full(family: str, alphabet: Sequence[str]) -> "Space":
        if family not in _BUILDERS:
            raise StructureError(f"cannot enumerate {family}; searchable: {', '.join(SEARCHABLE)}")
        ev = tuple(sorted(alphabet))
        return Space(family, ev, tuple(_BUILDERS[family](ev)))

    def narrowed(self, keep: Callable[[DimKey, Choice], bool]) -> "Space":
        dims = tuple(Dimension(d.key, tuple(c for c in d.choices if keep(d.key, c))) for d in self.dims)
        return Space(self.family, self.alphabet, dims)

    @property
    def radices(self) -> list[int]:
        return [len(d) for d in self.dims]

    @property
    def size(self) -> int:
        return prod(self.radices)

    def digits(self, index: int) -> list[int]:
        out = []
        for r in reversed(self.radices):
            index, digit = divmod(index, r)
            out.append(digit)
        return out[::-1]

    def index_of(self, digits: Sequence[int]) -> int:
        index = 0
        for r, digit in zip(self.radices, digits):
            index = index * r + digit
        return index

    def build(self, choices: Sequence[Choice]) -> Structure:
        rels: dict[str, list] = {}
        for choice in choices:
            for rel, item in choice:
                rels.setdefault(rel, []).append(item)
        return FAMILIES[self.family](self.alphabet, **rels)

    def decode(self, index: int) -> Structure:
        if not 0 <= index < self.size:
            raise IndexError(index)
        return self.build([d.choices[k] for d, k in zip(self.dims, self.digits(index))])

    def choices_of(self, s: Structure) -> dict[DimKey, Choice]:
        """Split ``s`` into its per-dimension choices (the inverse of :meth:`build`)."""
        groups: dict[DimKey, set] = {d.key: set() for d in self.dims}
        for rel, item in items_of(s):
            key = owner(self.family, rel, item)
            if key not in groups:
                raise StructureError(f"{rel} {item!r} lies outside this space")
            groups[key].add((rel, item))
        return {k: frozenset(v) for k, v in groups.items()}

    def encode(self, s: Structure) -> int | None:
        """Index of ``s`` in this space, or ``None`` if some choice is excluded."""
        if s.events != frozenset(self.alphabet):
            return None
        try:
            groups = self.choices_of(s)
        except StructureError:
            return None
        digits = []
        for d in self.dims:
            try:
                digits.append(d.choices.index(groups[d.key]))
            except ValueError:
                return None
        return self.index_of(digits)

    def iter_structures(self, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, Structure]]:
        stop = self.size if stop is None else min(stop, self.size)
        for index in range(start, stop):
            yield index, self.decode(index)
