"""Named example structures shipped as ``.est`` files, each with checkable facts."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Tuple

from .kernel import Dces, Structure, StructureError
from .posets import Poset, posets
from .semantics import configurations, dces_state_graph, initial_causes, traces, transition_graph
from .syntax import parse_named


def _t(word: str) -> tuple:
    """``"bac"`` -> ``("b", "a", "c")``; all corpus events have one-letter names."""
    return tuple(word)


def _c(word: str) -> frozenset:
    return frozenset(word)


@dataclass(frozen=True)
class Fact:
    """A checkable statement about a structure.

    ``kind`` selects the check; ``args`` are its operands and ``expected`` the
    value the check must return.
    """

    kind: str
    args: tuple
    expected: object = True
    note: str = ""

    def evaluate(self, s: Structure):
        return _CHECKS[self.kind](s, *self.args)

    def holds(self, s: Structure) -> bool:
        return self.evaluate(s) == self.expected

    def describe(self) -> str:
        return self.note or f"{self.kind}{self.args} == {self.expected!r}"


def _states_after(d: Dces, path) -> list:
    g = dces_state_graph(d)
    current = [g.root]
    for config in path:
        config = frozenset(config)
        current = [b for a, b in g.edges if a in current and b.config == config]
    return current


def _cs_after(d: Dces, path, event) -> frozenset:
    states = _states_after(d, path)
    values = {st.causes_of(event) for st in states}
    if len(values) != 1:
        raise StructureError(f"path {path} reaches {len(values)} causal states")
    return next(iter(values))


def _step_after(d: Dces, path, target) -> bool:
    target = frozenset(target)
    g = dces_state_graph(d)
    states = set(_states_after(d, path))
    return any(a in states and b.config == target for a, b in g.edges)


def _precedence_matches_translation(s) -> bool:
    from .translate import ebes_to_dces

    return posets(s, "precedence") == posets(ebes_to_dces(s), "precedence")


def _translation_adds(s) -> frozenset:
    from .translate import ebes_to_dces

    return ebes_to_dces(s).adds


_CHECKS = {
    "traces": lambda s: traces(s),
    "has_trace": lambda s, t: t in traces(s),
    "trace_count": lambda s: len(traces(s)),
    "configs": lambda s, mode: configurations(s, mode),
    "has_config": lambda s, mode, c: c in configurations(s, mode),
    "has_step": lambda s, x, y: (x, y) in transition_graph(s).edges,
    "initial_causes": lambda s, e: initial_causes(s, e),
    "cs_after": _cs_after,
    "step_after": _step_after,
    "has_precedence_poset": lambda s, p: p in posets(s, "precedence"),
    "precedence_matches_translation": _precedence_matches_translation,
    "translation_adds": _translation_adds,
}


@dataclass(frozen=True)
class ExampleEntry:
    name: str
    structure: Structure
    provenance: str
    expected_facts: Tuple[Fact, ...]

    def failed_facts(self) -> list[Fact]:
        return [f for f in self.expected_facts if not f.holds(self.structure)]


_SIGMA_XI_TRACES = frozenset(
    _t(w) for w in ["", "a", "c", "ab", "ac", "ca", "cb", "abc", "acb", "cab", "cba"]
)

CATALOG: dict[str, tuple[str, tuple]] = {
    "sigma_xi": (
        "SES in which b needs a unless c occurred; b can never come first",
        (
            Fact("traces", (), _SIGMA_XI_TRACES, "the eleven traces, none starting with b"),
            Fact("initial_causes", ("b",), frozenset({"a"})),
            Fact("initial_causes", ("a",), frozenset()),
        ),
    ),
    "xi_sigma": (
        "EBES with a one-way disabling: f may follow e but not precede it",
        (
            Fact("traces", (), frozenset({(), ("e",), ("f",), ("e", "f")})),
            Fact("has_precedence_poset", (Poset.generated("ef", [("e", "f")]),)),
        ),
    ),
    "beta_gamma": (
        "BES where c needs one of two conflicting events",
        (
            Fact("configs", ("trace",), frozenset(map(_c, ["", "a", "b", "ac", "bc"]))),
        ),
    ),
    "gamma_xi": (
        "GES in which a makes b a cause of c",
        (
            Fact("has_trace", (_t("a"),)),
            Fact("has_trace", (_t("c"),)),
            Fact("has_trace", (_t("ca"),)),
            Fact("has_trace", (_t("bac"),)),
            Fact("has_trace", (_t("ac"),), False),
        ),
    ),
    "gamma_sigma": (
        "GES in which b makes a impossible",
        (Fact("traces", (), frozenset({(), ("a",), ("b",), ("a", "b")})),),
    ),
    "rho_sigma": (
        "RCES where e and f may each occur alone, and together only after f",
        (
            Fact("configs", ("step",), frozenset(map(_c, ["", "e", "f", "ef"]))),
            Fact("has_step", (_c("f"), _c("ef")), True),
            Fact("has_step", (_c("e"), _c("ef")), False),
        ),
    ),
    "rho_gamma": (
        "RCES (reconstructed) where {a,b,c} is reachable but not from {a,b}",
        (
            *(Fact("has_config", ("step", _c(w))) for w in ["a", "b", "c", "ac", "bc", "abc"]),
            Fact("has_step", (_c("ab"), _c("abc")), False),
        ),
    ),
    "lemma1_delta": (
        "DCES where a adds c as a cause of d and b drops it",
        (
            Fact("cs_after", ([_c("a")], "d"), frozenset({"c"})),
            Fact("cs_after", ([_c("a"), _c("ab")], "d"), frozenset()),
            Fact("step_after", ([_c("a"), _c("ab")], _c("abd")), True),
            Fact("cs_after", ([_c("b"), _c("ab")], "d"), frozenset({"c"})),
            Fact("step_after", ([_c("b"), _c("ab")], _c("abd")), False),
        ),
    ),
    "lemma1_delta_prime": (
        "DCES with four independent events",
        (Fact("step_after", ([_c("b"), _c("ab")], _c("abd")), True),),
    ),
    "lemma6_des": (
        "DES where e needs all but at most one of a, b, c, d",
        (
            *(Fact("has_trace", ((x,),)) for x in "abcd"),
            Fact("has_trace", (_t("e"),), False),
            Fact("has_trace", (_t("ae"),), False),
            Fact("has_trace", (_t("abe"),), False),
            Fact("has_trace", (_t("abce"),)),
            Fact("has_trace", (_t("bdce"),)),
        ),
    ),
    "fig2_ebes": (
        "EBES (reconstructed) with mutual and one-way disabling and two bundles",
        (
            Fact("precedence_matches_translation", ()),
            Fact("translation_adds", (), frozenset({("c", "d", "c")})),
        ),
    ),
}

NAMES = tuple(sorted(CATALOG))


def example_path(name: str):
    return resources.files(__package__).joinpath("corpus_files", f"{name}.est")


@lru_cache(maxsize=None)
def load_example(name: str) -> ExampleEntry:
    """Load a catalogued example by name."""
    if name not in CATALOG:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(NAMES)}")
    path = example_path(name)
    _, structure = parse_named(path.read_text(encoding="utf-8"), source=f"{name}.est")
    provenance, facts = CATALOG[name]
    return ExampleEntry(name, structure, provenance, facts)


def all_examples() -> list[ExampleEntry]:
    return [load_example(n) for n in NAMES]
