"""The claim registry: every checkable statement, replayed on demand.

Nonexistence claims run an exhaustive (possibly pruned) search; the
equivalence statements run as property checks on seeded random instances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional

from ..corpus import load_example
from ..equiv import equivalent
from ..kernel import Dces, StructureError, classify_dces
from ..posets import posets, precedence
from ..semantics import (
    causal_state_closed_form,
    configurations,
    dces_state_graph,
    traces,
    transition_graph,
)
from ..translate import des_to_ses, ebes_to_dces, embed, ses_to_des
from . import filters as F
from . import generate as G
from .core import SearchOutcome, SearchSpec, find_match

RANDOM_INSTANCES = 200


@dataclass(frozen=True)
class ClaimResult:
    claim: str
    passed: bool
    statement: str
    evidence: dict = field(default_factory=dict, compare=False)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.claim}: {self.statement}"


@dataclass(frozen=True)
class SearchClaim:
    """No structure in ``spec`` is ``kind``-equivalent to the named target."""

    spec: SearchSpec
    target: str
    kind: str
    statement: str
    translate: Optional[Callable] = None

    def target_structure(self):
        s = load_example(self.target).structure
        return self.translate(s) if self.translate else s


SEARCHES: dict[str, SearchClaim] = {
    "lem6": SearchClaim(
        SearchSpec(
            "SES",
            tuple("abcde"),
            (F.no_conflict(), F.no_initial_causes("abcd"), F.no_self_cause("e")),
        ),
        "lemma6_des",
        "trace",
        "no SES on {a,b,c,d,e} has the traces of lemma6_des",
    ),
    "thm3-ses-side": SearchClaim(
        SearchSpec("SES", ("e", "f")),
        "xi_sigma",
        "trace",
        "no SES on {e,f} has the traces of xi_sigma",
    ),
    "thm3-ebes-side": SearchClaim(
        SearchSpec("EBES", tuple("abc")),
        "sigma_xi",
        "trace",
        "no EBES on {a,b,c} has the traces of sigma_xi",
    ),
    "lem9": SearchClaim(
        SearchSpec("SES", ("e", "f")),
        "rho_sigma",
        "transition",
        "no SES on {e,f} has the transitions of rho_sigma",
    ),
    "lem11": SearchClaim(
        SearchSpec(
            "GES",
            tuple("abc"),
            (
                F.conflict_only([("a", "b")]),
                F.no_initial_causes("ab"),
                F.initial_causes_among("c", ["a", "b", "ab"]),
                F.effective_modifiers(),
            ),
        ),
        "beta_gamma",
        "config",
        "no GES on {a,b,c} has the configurations of beta_gamma",
    ),
    "lem12": SearchClaim(
        SearchSpec("EBES", tuple("abc")),
        "gamma_xi",
        "trace",
        "no EBES on {a,b,c} has the traces of gamma_xi",
    ),
    "lem13": SearchClaim(
        SearchSpec("SES", ("a", "b")),
        "gamma_sigma",
        "trace",
        "no SES on {a,b} has the traces of gamma_sigma",
    ),
    "lem15": SearchClaim(
        SearchSpec(
            "GES",
            tuple("abc"),
            (F.no_conflict(), F.no_initial_causes("abc"), F.effective_modifiers()),
        ),
        "rho_gamma",
        "transition",
        "no GES on {a,b,c} has the transitions of rho_gamma",
    ),
    "lem22": SearchClaim(
        SearchSpec(
            "DCES",
            tuple("abc"),
            (
                F.no_conflict(),
                F.no_initial_causes("abc"),
                F.effective_modifiers(),
                F.no_add_into("c", "ab"),
            ),
        ),
        "rho_gamma",
        "transition",
        "no DCES on {a,b,c} has the transitions of rho_gamma",
    ),
    "lem28": SearchClaim(
        SearchSpec("EBES", tuple("abc")),
        "sigma_xi",
        "config",
        "no EBES on {a,b,c} has the configurations of the DCES embedding of sigma_xi",
        translate=embed,
    ),
}


def run_search(claim_id: str, **budget) -> SearchOutcome:
    c = SEARCHES[claim_id]
    spec = c.spec
    if budget:
        spec = SearchSpec(spec.family, spec.alphabet, spec.constraints, **budget)
    return find_match(spec, c.target_structure(), c.kind)


def _search_claim(claim_id: str, **budget) -> ClaimResult:
    c = SEARCHES[claim_id]
    out = run_search(claim_id, **budget)
    evidence = {
        "status": out.status,
        "explored": out.explored,
        "wellformed": out.wellformed,
        "space": c.spec.space().size,
        "filters": [f.name for f in c.spec.constraints],
    }
    if out.structure is not None:
        evidence["match"] = out.structure
    return ClaimResult(claim_id, out.status == "exhausted-none", c.statement, evidence)


# --------------------------------------------------------------------------- #
# Non-search claims
# --------------------------------------------------------------------------- #


def _lem1() -> ClaimResult:
    d = load_example("lemma1_delta").structure
    dp = load_example("lemma1_delta_prime").structure
    a, b, ab, abd = (frozenset(w) for w in ("a", "b", "ab", "abd"))

    def step_after(x, path):
        g = dces_state_graph(x)
        states = [g.root]
        for c in path:
            states = [t for s, t in g.edges if s in states and t.config == c]
        return any(s in states and t.config == abd for s, t in g.edges)

    transition = equivalent(d, dp, "transition")
    state = equivalent(d, dp, "state")
    facts = {
        "transition-equal": transition.equal,
        "state-unequal": not state.equal,
        "step-after-a-b": step_after(d, [a, ab]),
        "no-step-after-b-a": not step_after(d, [b, ab]),
    }
    evidence = {"facts": facts, "state-witness": state.witness}
    if not transition.equal:
        evidence["transition-witness"] = (transition.side, transition.witness)
    return ClaimResult(
        "lem1",
        all(facts.values()),
        "lemma1_delta and lemma1_delta_prime are transition-equal but not state-equal",
        evidence,
    )


def _property(claim_id: str, statement: str, seed: int, make, check) -> ClaimResult:
    rng = random.Random(seed)
    failures = []
    checked = 0
    for i in range(RANDOM_INSTANCES):
        inst = make(rng)
        checked += 1
        if not check(inst):
            failures.append((i, inst))
    evidence = {"instances": checked, "seed": seed, "failures": len(failures)}
    if failures:
        evidence["first-failure"] = failures[0][1]
    return ClaimResult(claim_id, not failures, statement, evidence)


def _size(rng: random.Random, lo: int = 1, hi: int = 5) -> int:
    return rng.randint(lo, hi)


def _roundtrip_pair(rng):
    s = G.random_ses(rng, _size(rng, 2, 5))
    t = s
    for _ in range(rng.randint(0, 2)):
        t = G.mutate_ses(rng, t)
    return s, t


def _three_way(pair) -> bool:
    s, t = pair
    verdicts = {
        equivalent(s, t, "trace").equal,
        equivalent(s, t, "poset", "early").equal,
        equivalent(s, t, "transition").equal,
    }
    return len(verdicts) == 1


def _same(s, t, modes) -> bool:
    return all(posets(s, m) == posets(t, m) for m in modes)


def _thm14_check(d: Dces) -> bool:
    g = transition_graph(d)
    configs = sorted(g.nodes, key=lambda c: (len(c), sorted(c)))
    for c2 in configs:
        order = precedence(d, c2)
        for c1 in configs:
            if not c1 <= c2:
                continue
            rule = all(y in c1 for x in c2 for y in c2 if x != y and order.leq(y, x))
            if ((c1, c2) in g.edges) != rule:
                return False
    return True


def _random_ebdc(rng):
    return ebes_to_dces(G.random_ebes(rng, _size(rng, 1, 3)))


def _lem16_check(d: Dces) -> bool:
    g = dces_state_graph(d)
    return all(st.cs_map() == causal_state_closed_form(d, st.config) for st in g.nodes)


def _random_embeddable(rng):
    return G.random_ses(rng, _size(rng)) if rng.random() < 0.5 else G.random_ges(rng, _size(rng))


PROPERTIES: dict[str, Callable[[], ClaimResult]] = {
    "thm2-roundtrip": lambda: _property(
        "thm2-roundtrip",
        "for SES pairs, trace, early-poset and transition equivalence coincide",
        2,
        _roundtrip_pair,
        _three_way,
    ),
    "thm11": lambda: _property(
        "thm11",
        "ses_to_des preserves traces, configurations and early posets",
        11,
        lambda rng: G.random_ses(rng, _size(rng)),
        lambda s: traces(s) == traces(ses_to_des(s))
        and configurations(s) == configurations(ses_to_des(s))
        and _same(s, ses_to_des(s), ["early"]),
    ),
    "thm12": lambda: _property(
        "thm12",
        "des_to_ses preserves traces, configurations and early posets",
        12,
        lambda rng: G.random_des(rng, _size(rng)),
        lambda d: traces(d) == traces(des_to_ses(d))
        and configurations(d) == configurations(des_to_ses(d))
        and _same(d, des_to_ses(d), ["early"]),
    ),
    "thm13": lambda: _property(
        "thm13",
        "both SES/DES translations preserve liberal, minimal and late posets",
        13,
        lambda rng: G.random_ses(rng, _size(rng)) if rng.random() < 0.5 else G.random_des(rng, _size(rng)),
        lambda s: _same(s, ses_to_des(s) if s.family == "SES" else des_to_ses(s), ["liberal", "minimal", "late"]),
    ),
    "thm14": lambda: _property(
        "thm14",
        "an EBDC steps from C to C' exactly when C is left-closed in the precedence order of C'",
        14,
        _random_ebdc,
        _thm14_check,
    ),
    "lem16": lambda: _property(
        "lem16",
        "causal states of a single-state DCES follow from the configuration alone",
        16,
        lambda rng: G.random_ssdc(rng, _size(rng)),
        _lem16_check,
    ),
    "lem21": lambda: _property(
        "lem21",
        "the DCES embedding of a SES or GES has the same transitions",
        21,
        _random_embeddable,
        lambda s: transition_graph(s) == transition_graph(embed(s)),
    ),
    "lem26": lambda: _property(
        "lem26",
        "ebes_to_dces preserves configurations",
        26,
        lambda rng: G.random_ebes(rng, _size(rng)),
        lambda x: configurations(x) == configurations(ebes_to_dces(x), "step"),
    ),
    "lem27": lambda: _property(
        "lem27",
        "ebes_to_dces preserves precedence posets",
        27,
        lambda rng: G.random_ebes(rng, _size(rng)),
        lambda x: posets(x, "precedence") == posets(ebes_to_dces(x), "precedence"),
    ),
}

CLAIM_IDS = (
    "lem1",
    "lem6",
    "thm3-ses-side",
    "thm3-ebes-side",
    "lem9",
    "lem11",
    "lem12",
    "lem13",
    "lem15",
    "lem22",
    "lem28",
    "thm2-roundtrip",
    "thm11",
    "thm12",
    "thm13",
    "thm14",
    "lem16",
    "lem21",
    "lem26",
    "lem27",
)


def verify_claim(claim_id: str, **budget) -> ClaimResult:
    if claim_id == "lem1":
        return _lem1()
    if claim_id in SEARCHES:
        return _search_claim(claim_id, **budget)
    if claim_id in PROPERTIES:
        return PROPERTIES[claim_id]()
    raise StructureError(f"unknown claim {claim_id!r}; known: {', '.join(CLAIM_IDS)}")


def verify_claims(ids, **budget) -> list[ClaimResult]:
    ids = list(ids)
    unknown = [i for i in ids if i not in CLAIM_IDS]
    if unknown:
        raise StructureError(f"unknown claim(s) {', '.join(unknown)}; known: {', '.join(CLAIM_IDS)}")
    return [verify_claim(i, **budget) for i in ids]
