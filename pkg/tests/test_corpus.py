from __future__ import annotations

import pytest

from dynes.corpus import CATALOG, NAMES, Fact, all_examples, example_path, load_example
from dynes.kernel import validate
from dynes.syntax import parse_named


@pytest.mark.parametrize("name", NAMES)
def test_example_loads_validates_and_satisfies_its_facts(name):
    entry = load_example(name)
    assert entry.name == name
    assert validate(entry.structure).ok
    assert entry.expected_facts
    assert entry.failed_facts() == []


@pytest.mark.parametrize("name", NAMES)
def test_file_header_names_the_example(name):
    declared, _ = parse_named(example_path(name).read_text(encoding="utf-8"))
    assert declared == name


def test_every_file_is_catalogued():
    shipped = {p.name[: -len(".est")] for p in example_path("sigma_xi").parent.iterdir() if p.name.endswith(".est")}
    assert shipped == set(CATALOG)
    assert [e.name for e in all_examples()] == sorted(shipped)


def test_unknown_example():
    with pytest.raises(KeyError):
        load_example("nope")


def test_fact_negation_is_checked():
    s = load_example("gamma_xi").structure
    assert Fact("has_trace", (("a", "c"),), False).holds(s)
    assert not Fact("has_trace", (("a", "c"),), True).holds(s)
    assert "has_trace" in Fact("has_trace", (("a",),)).describe()


def test_corpus_symlink_points_at_package_files():
    from pathlib import Path

    root = Path(__file__).resolve().parent.parent / "corpus"
    if root.exists():
        assert (root / "sigma_xi.est").read_text() == example_path("sigma_xi").read_text()
