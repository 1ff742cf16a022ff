from __future__ import annotations

import pytest

from dynes.kernel import (
    Bes,
    Dces,
    Des,
    Ebes,
    Ges,
    Rces,
    Ses,
    StructureError,
    classify_dces,
    require_valid,
    validate,
)


def test_constructors_normalise_relations():
    s = Ses("a b", [("a", "b")], [("a", "b")], [("a", "b", "b")])
    assert s.events == frozenset("ab")
    assert s.conflict == {frozenset("ab")}
    assert s.causes == {("a", "b")}
    assert hash(s) == hash(Ses(["b", "a"], [("b", "a")], [("a", "b")], [("a", "b", "b")]))


def test_structures_are_frozen():
    s = Ses("a")
    with pytest.raises(AttributeError):
        s.events = frozenset()


@pytest.mark.parametrize(
    "structure, rule",
    [
        (Ses("a", [("a", "a")]), "irreflexive"),
        (Ses("a b", (), (), [("a", "b", "b")]), "drop-without-cause"),
        (Ses("a", (), [("a", "q")]), "unknown-event"),
        (Dces("a b c", (), [("a", "b")], (), [("a", "c", "b")]), "add-of-initial-cause"),
        (Dces("a b c", (), (), [("a", "c", "b")]), "drop-of-absent-cause"),
        (Ebes("a", [("a", "a")]), "irreflexive"),
        (Bes("a b c", (), [({"a", "b"}, "c")]), "stability"),
        (Ebes("a b c", [("a", "b")], [({"a", "b"}, "c")]), "stability"),
        (Des("a b", (), [({"a", "b"}, "b")]), "bundle-contains-target"),
    ],
)
def test_validate_reports_rule(structure, rule):
    report = validate(structure)
    assert not report.ok
    assert rule in report.rules()
    with pytest.raises(StructureError):
        require_valid(structure)


def test_valid_structures_pass():
    for s in [
        Ses("a b c", [("a", "b")], [("a", "c")], [("a", "b", "c")]),
        Ges("a b c", (), [("a", "b")], [("c", "a", "b")]),
        Dces("a b c", (), [("a", "b")], [("a", "c", "b")], [("b", "c", "a")]),
        Bes("a b c", [("a", "b")], [({"a", "b"}, "c")]),
        Ebes("a b c", [("a", "b"), ("b", "a")], [({"a", "b"}, "c")]),
        Rces("a b", [((), ()), ((), ("a",)), (("a",), ("a", "b"))]),
        Ses(),
    ]:
        assert validate(s).ok, s


def test_empty_bundle_is_allowed():
    assert validate(Des("a", (), [((), "a")])).ok


def test_bes_is_a_des_with_its_own_family():
    assert isinstance(Bes("a"), Des)
    assert Bes.family == "BES"


def test_classify_dces():
    ssdc = Dces("a b c", (), [("a", "b")], [("a", "c", "b")])
    assert classify_dces(ssdc).is_ssdc
    assert not classify_dces(ssdc).is_ebdc  # dropper c and cause a do not conflict

    not_ssdc = Dces("a b c d", (), (), [("c", "b", "d")], [("c", "a", "d")])
    assert not classify_dces(not_ssdc).is_ssdc

    ebdc = Dces("a b c", [("a", "c")], [("a", "b")], [("a", "c", "b")], [("b", "c", "b")])
    flags = classify_dces(ebdc)
    assert flags.is_ssdc and flags.is_ebdc

    with pytest.raises(StructureError):
        classify_dces(Ses("a"))
