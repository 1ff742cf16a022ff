from __future__ import annotations

import random
import zlib

import numpy as np
import pytest

from dynes.corpus import load_example
from dynes.equiv import equivalent
from dynes.kernel import Ges, Ses, StructureError
from dynes.search import SearchSpec, find_match, find_match_parallel, merge
from dynes.search import fast
from dynes.search.claims import SEARCHES
from dynes.search.core import _blocks, count_wellformed
from dynes.search.filters import effective_modifiers, no_initial_causes, sample_excluded
from dynes.search.space import Space
from dynes.semantics import configurations, traces, transition_graph
from dynes.translate import ses_to_des


def _signatures(space):
    """Vectorized (reach, per-event enabled) rows for every index of ``space``."""
    n = len(space.alphabet)
    fresh = np.array([fast._fresh_mask(n, i) for i in range(n)], dtype=np.uint64)
    for lo, hi, block in _blocks(space):
        masks = block.masks & fresh
        r = fast.reachable(masks)
        for k in range(hi - lo):
            yield lo + k, int(r[k]), tuple(int(masks[k, i]) & int(r[k]) for i in range(n))


@pytest.mark.parametrize("family, events", [("SES", "ab"), ("GES", "ab"), ("DES", "abc"), ("EBES", "ab")])
def test_vectorized_signature_agrees_with_semantics(family, events):
    space = Space.full(family, events)
    rng = random.Random(3)
    wanted = set(rng.sample(range(space.size), min(space.size, 400)))
    for index, reach, enabled in _signatures(space):
        if index not in wanted:
            continue
        s = space.decode(index)
        sig = fast.Signature.of_traces(traces(s), space.alphabet)
        assert (reach, enabled) == (sig.reach, sig.enabled), index
        assert reach == fast.Signature.of_configurations(configurations(s), space.alphabet)


def test_signature_of_non_history_determined_trace_set(example):
    # in a DCES the order of a and b decides whether d may follow
    assert fast.Signature.of_traces(traces(example("lemma1_delta")), tuple("abcd")) is None


def test_find_match_finds_a_translation(example):
    target = ses_to_des(example("sigma_xi"))
    out = find_match(SearchSpec("DES", tuple("abc")), target, "trace")
    assert out.found
    assert equivalent(out.structure, target, "trace").equal
    assert out.explored == out.index + 1


def test_find_match_exhausts(example):
    out = find_match(SearchSpec("SES", ("e", "f")), example("xi_sigma"), "trace")
    assert out.status == "exhausted-none"
    assert out.explored == 1250 and out.structure is None


def test_fast_and_slow_paths_agree(example):
    target = Ses("a b", (), [("a", "b")], [("a", "a", "b")])
    fast_out = find_match(SearchSpec("SES", ("a", "b")), target, "trace")
    space = SearchSpec("SES", ("a", "b")).space()
    slow_index = next(i for i in range(space.size) if equivalent(space.decode(i), target, "trace").equal)
    assert fast_out.index == slow_index


def test_transition_search_uses_semantics():
    target = Ges("a b", (), (), [("a", "b", "b")])
    out = find_match(SearchSpec("GES", ("a", "b")), target, "transition")
    assert out.found
    assert transition_graph(out.structure) == transition_graph(target)


def test_budget_is_reported_distinctly(example):
    spec = SearchSpec("SES", ("e", "f"), max_structures=100)
    out = find_match(spec, example("xi_sigma"), "trace")
    assert out.status == "budget-exceeded"
    assert out.explored == 100
    slow = find_match(spec, example("rho_sigma"), "transition")
    assert slow.status == "budget-exceeded" and slow.explored == 100


def test_search_is_deterministic(example):
    spec = SearchSpec("EBES", tuple("abc"))
    first = find_match(spec, example("sigma_xi"), "trace")
    second = find_match(spec, example("sigma_xi"), "trace")
    assert first == second


def test_range_searches_merge_to_the_sequential_result(example):
    target = ses_to_des(example("sigma_xi"))
    spec = SearchSpec("DES", tuple("abc"))
    whole = find_match(spec, target, "trace")
    size = spec.space().size
    parts = [find_match(spec, target, "trace", lo, hi) for lo, hi in [(0, size // 3), (size // 3, size)]]
    merged = merge(parts)
    assert merged.structure == whole.structure and merged.index == whole.index


def test_parallel_search_matches_sequential(example):
    spec = SearchSpec("SES", ("e", "f"))
    seq = find_match(spec, example("xi_sigma"), "trace")
    par = find_match_parallel(spec, example("xi_sigma"), "trace", workers=2)
    assert (par.status, par.explored, par.wellformed) == (seq.status, seq.explored, seq.wellformed)


def test_count_wellformed_respects_filters():
    spec = SearchSpec("GES", tuple("abc"), (no_initial_causes("ab"),))
    assert count_wellformed(SearchSpec("GES", ("a",))) == 4
    assert spec.space().size == SearchSpec("GES", tuple("abc")).space().size // 64


def test_ges_filter_emits_only_admitted_structures():
    spec = SearchSpec("GES", tuple("abc"), (no_initial_causes("ab"),))
    space = spec.space()
    for i in random.Random(0).sample(range(space.size), 200):
        s = space.decode(i)
        assert not any(t in "ab" for _, t in s.causes)


def test_ges_initial_cause_filter_is_justified():
    # any GES with an initial cause of a or b has no configuration {a} or {b}
    spec = SearchSpec("GES", tuple("abc"), (no_initial_causes("ab"),))
    for s in sample_excluded(spec, "no-initial-causes-ab", random.Random(0), 200):
        configs = configurations(s)
        assert frozenset("a") not in configs or frozenset("b") not in configs


def test_search_rejects_target_on_other_alphabet(example):
    with pytest.raises(StructureError):
        find_match(SearchSpec("SES", ("a", "b")), example("xi_sigma"), "trace")


# ------------------------------------------------------ filter soundness --

FILTER_CASES = [(cid, f.name) for cid, c in SEARCHES.items() for f in c.spec.constraints]


@pytest.mark.parametrize("claim_id, name", FILTER_CASES)
def test_filter_excludes_only_non_matches(claim_id, name):
    claim = SEARCHES[claim_id]
    target = claim.target_structure()
    samples = list(sample_excluded(claim.spec, name, random.Random(zlib.crc32(name.encode())), 150))
    assert samples, "filter excludes nothing that the other filters admit"
    for s in samples:
        assert not equivalent(s, target, claim.kind).equal, s


def _random_ineffective_triples(rng, s):
    ev = sorted(s.events)
    extra = set()
    for _ in range(3):
        c, t = rng.choice(ev), rng.choice(ev)
        extra.add((c, rng.choice([c, t]), t))
    return extra


@pytest.mark.parametrize("seed", range(60))
def test_ineffective_adds_are_invisible(seed):
    from dynes.search import generate as G

    rng = random.Random(seed)
    g = G.random_ges(rng, 3)
    more = Ges(g.events, g.conflict, g.causes, g.adds | _random_ineffective_triples(rng, g))
    assert transition_graph(more) == transition_graph(g)
    assert configurations(more) == configurations(g)


@pytest.mark.parametrize("seed", range(60))
def test_ineffective_dces_triples_are_invisible(seed):
    from dynes.kernel import Dces, validate
    from dynes.search import generate as G

    rng = random.Random(seed)
    d = G.random_dces(rng, 3)
    extra = _random_ineffective_triples(rng, d)
    adds = d.adds | {x for x in extra if (x[0], x[2]) not in d.causes}
    drops = d.drops | {x for x in extra if (x[0], x[2]) in d.causes}
    more = Dces(d.events, d.conflict, d.causes, drops, adds)
    if not validate(more).ok:
        return
    assert transition_graph(more) == transition_graph(d)


def test_effective_modifier_filter_keeps_effective_triples():
    f = effective_modifiers()
    assert f.keep(("add", "a", "b", "c"), frozenset({("adds", ("a", "b", "c"))}))
    assert not f.keep(("add", "a", "a", "c"), frozenset({("adds", ("a", "a", "c"))}))
    assert f.admits(Space.full("GES", "abc"), Ges("a b c", (), (), [("a", "b", "c")]))
