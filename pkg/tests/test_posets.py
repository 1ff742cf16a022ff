from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynes.kernel import Des, Ebes, Ses, StructureError
from dynes.posets import Poset, cause_sets, closure, posets, precedence
from dynes.search import generate as G
from dynes.semantics import traces

seeds = st.integers(0, 10**6)


def P(carrier, *pairs):
    return Poset.generated(carrier, [tuple(p) for p in pairs])


def test_closure_is_reflexive_and_transitive():
    order = closure("abc", [("a", "b"), ("b", "c")])
    assert ("a", "c") in order and ("b", "b") in order
    assert P("abc", "ab", "bc").is_partial_order()


def test_sigma_xi_early_posets(example):
    assert posets(example("sigma_xi"), "early") == {
        P(""),
        P("a"),
        P("c"),
        P("ab", "ab"),
        P("ac"),
        P("bc", "cb"),
        P("abc", "ab"),
        P("abc", "cb"),
    }


def test_early_prefers_the_earliest_cause():
    # b needs a or c; in the trace a c b, a is the earlier one
    d = Des("a b c", (), [({"a", "c"}, "b")])
    assert cause_sets(d, tuple("acb"), 2, "early") == [frozenset("a")]
    assert cause_sets(d, tuple("acb"), 2, "late") == [frozenset("c")]
    assert sorted(map(sorted, cause_sets(d, tuple("acb"), 2, "minimal"))) == [["a"], ["c"]]
    assert len(cause_sets(d, tuple("acb"), 2, "liberal")) == 3


def test_bsat_picks_one_member_per_bundle():
    d = Des("a b c e", (), [({"a", "b"}, "e"), ({"b", "c"}, "e")])
    sets = cause_sets(d, tuple("abce"), 3, "bsat")
    assert sorted(map(sorted, sets)) == [["a", "b"], ["a", "c"], ["b"], ["b", "c"]]


def test_bsat_is_des_only():
    with pytest.raises(StructureError):
        posets(Ses("a"), "bsat")


def test_modes_reject_other_families():
    with pytest.raises(StructureError):
        posets(Ebes("a"), "early")
    with pytest.raises(StructureError):
        posets(Ses("a"), "precedence")
    with pytest.raises(StructureError):
        posets(Ses("a"), "bogus")


def test_precedence_of_ebes(example):
    x = example("xi_sigma")
    assert precedence(x, frozenset("ef")) == P("ef", "ef")
    assert posets(x, "precedence") == {P(""), P("e"), P("f"), P("ef", "ef")}


def _random_ses_or_des(seed):
    rng = random.Random(seed)
    return G.random_ses(rng, 4) if rng.random() < 0.5 else G.random_des(rng, 4)


@given(seeds)
def test_posets_are_partial_orders_linearised_by_traces(seed):
    s = _random_ses_or_des(seed)
    ts = traces(s)
    for mode in ("early", "liberal", "minimal", "late"):
        for p in posets(s, mode):
            assert p.is_partial_order()
            assert any(frozenset(t) == p.carrier for t in ts)


@given(seeds)
def test_mode_inclusions(seed):
    s = _random_ses_or_des(seed)
    minimal = posets(s, "minimal")
    assert posets(s, "late") <= minimal
    assert posets(s, "early") <= minimal
    assert minimal <= posets(s, "liberal")


@given(seeds)
def test_every_trace_has_an_early_poset_it_linearises(seed):
    s = _random_ses_or_des(seed)
    ps = posets(s, "early")
    for t in traces(s):
        pos = {x: i for i, x in enumerate(t)}
        assert any(
            p.carrier == frozenset(t) and all(pos[x] <= pos[y] for x, y in p.order) for p in ps
        )
