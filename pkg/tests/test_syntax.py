from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dynes.kernel import Ebes, Rces, Ses
from dynes.search import generate as G
from dynes.syntax import ParseError, parse_named, parse_structure, serialize

SES_TEXT = """\
# b needs a unless c occurred
structure demo : SES
events a b c
cause a -> b
drop [a -> b] by c
"""


def test_parse_ses():
    name, s = parse_named(SES_TEXT)
    assert name == "demo"
    assert s == Ses("a b c", (), [("a", "b")], [("a", "c", "b")])


def test_parse_enablings_with_empty_sets():
    s = parse_structure("structure r : RCES\nevents e f\nenable {} |- {}\nenable {f} |- {e, f}\n")
    assert s == Rces("e f", [((), ()), (("f",), ("e", "f"))])


def test_disabling_direction():
    s = parse_structure("structure x : EBES\nevents e f\ndisabling e ~> f\n")
    assert s == Ebes("e f", [("e", "f")])


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("events a\n", 1, "missing"),
        ("structure x : SES\nevents a\nbundle {a} -> a\n", 3, "not allowed"),
        ("structure x : SES\nevents a b\ncause a -> q\n", 3, "unknown event 'q'"),
        ("structure x : XES\n", 1, "unknown family"),
        ("structure x : SES\nevents a a\n", 2, "duplicate event"),
        ("structure x : SES\nevents a b\ncause a b\n", 3, "expected"),
        ("structure x : SES\nstructure y : SES\n", 2, "duplicate structure header"),
        ("structure x : DES\nevents a b\nbundle {a, b} -> b\n", 3, "inside its own bundle"),
    ],
)
def test_parse_errors_name_file_and_line(text, line, fragment):
    with pytest.raises(ParseError) as info:
        parse_structure(text, source="f.est")
    assert info.value.line == line
    assert str(info.value).startswith(f"f.est:{line}:")
    assert fragment in str(info.value)


def _random_structure(seed: int):
    import random

    rng = random.Random(seed)
    make = rng.choice([G.random_ses, G.random_ges, G.random_dces, G.random_des, G.random_bes, G.random_ebes])
    return make(rng, rng.randint(0, 4))


@given(st.integers(0, 10**6))
def test_serialize_parse_roundtrip(seed):
    s = _random_structure(seed)
    name, back = parse_named(serialize(s, "x"))
    assert name == "x"
    assert back == s


def test_serialize_is_canonical():
    a = Ses("c b a", [("b", "a")], [("a", "b")], [("a", "c", "b")])
    b = Ses("a b c", [("a", "b")], [("a", "b")], [("a", "c", "b")])
    assert serialize(a) == serialize(b)
