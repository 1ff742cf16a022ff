"""Reader and writer for the line-oriented ``.est`` structure format.

Example::

    # disjunctive causality
    structure sigma_xi : SES
    events a b c
    cause a -> b
    drop [a -> b] by c

Clauses: ``events``, ``conflict x # y``, ``cause x -> y``,
``drop [c -> t] by d``, ``add [c -> t] by a``, ``bundle {x, y} -> e``,
``disabling x ~> y`` and ``enable {w} |- {z1, z2}``.  Which clauses are legal
depends on the declared family.  Lines whose first non-blank character is
``#`` are comments.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .kernel import FAMILIES, Structure, StructureError

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z0-9_]+)|(?P<op>->|~>|\|-|[#{}\[\],:]))")

CLAUSES = {
    "SES": {"events", "conflict", "cause", "drop"},
    "GES": {"events", "conflict", "cause", "add"},
    "DCES": {"events", "conflict", "cause", "drop", "add"},
    "DES": {"events", "conflict", "bundle"},
    "BES": {"events", "conflict", "bundle"},
    "EBES": {"events", "disabling", "bundle"},
    "RCES": {"events", "enable"},
}


class ParseError(StructureError):
    def __init__(self, message: str, line: int, column: int, source: str = "<text>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


@dataclass
class _Tok:
    text: str
    kind: str
    col: int


def _tokenize(line: str, lineno: int, source: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(line):
        if line[pos:].strip() == "":
            break
        m = _TOKEN.match(line, pos)
        if not m:
            col = pos + len(line[pos:]) - len(line[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {line[col - 1]!r}", lineno, col, source)
        kind = "name" if m.group("name") else "op"
        text = m.group(kind)
        toks.append(_Tok(text, kind, m.start(kind) + 1))
        pos = m.end()
    return toks


class _Line:
    def __init__(self, toks: list[_Tok], lineno: int, source: str, end_col: int):
        self.toks = toks
        self.i = 0
        self.lineno = lineno
        self.source = source
        self.end_col = end_col

    def error(self, message: str, tok: _Tok | None = None) -> ParseError:
        col = tok.col if tok else (self.toks[self.i].col if self.i < len(self.toks) else self.end_col)
        return ParseError(message, self.lineno, col, self.source)

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def op(self, text: str) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != "op" or tok.text != text:
            raise self.error(f"expected {text!r}")
        self.i += 1
        return tok

    def name(self) -> _Tok:
        tok = self.peek()
        if tok is None or tok.kind != "name":
            raise self.error("expected an event name")
        self.i += 1
        return tok

    def keyword(self, text: str) -> None:
        tok = self.peek()
        if tok is None or tok.kind != "name" or tok.text != text:
            raise self.error(f"expected {text!r}")
        self.i += 1

    def set(self) -> list[_Tok]:
        self.op("{")
        items: list[_Tok] = []
        if self.peek() is not None and self.peek().text == "}":
            self.i += 1
            return items
        while True:
            items.append(self.name())
            tok = self.peek()
            if tok is not None and tok.text == ",":
                self.i += 1
                continue
            self.op("}")
            return items

    def done(self) -> None:
        if self.i < len(self.toks):
            raise self.error(f"unexpected {self.toks[self.i].text!r}")


def parse_named(text: str, source: str = "<text>") -> tuple[str, Structure]:
    """Parse ``.est`` text into ``(name, structure)``."""
    name = family = None
    events: list[str] = []
    rel: dict[str, list] = {k: [] for k in ("conflict", "causes", "drops", "adds", "bundles", "disabling", "enablings")}
    refs: list[tuple[_Tok, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        ln = _Line(_tokenize(raw, lineno, source), lineno, source, len(raw.rstrip()) + 1)
        head = ln.name()
        if head.text == "structure":
            if family is not None:
                raise ln.error("duplicate structure header", head)
            name = ln.name().text
            ln.op(":")
            fam_tok = ln.name()
            if fam_tok.text not in FAMILIES:
                raise ln.error(f"unknown family {fam_tok.text!r}", fam_tok)
            family = fam_tok.text
            ln.done()
            continue
        if family is None:
            raise ln.error("missing 'structure NAME : FAMILY' header", head)
        if head.text not in CLAUSES[family]:
            raise ln.error(f"clause {head.text!r} not allowed in {family}", head)

        def ref(tok: _Tok) -> str:
            refs.append((tok, lineno))
            return tok.text

        if head.text == "events":
            while ln.peek() is not None:
                tok = ln.name()
                if tok.text in events:
                    raise ln.error(f"duplicate event {tok.text!r}", tok)
                events.append(tok.text)
        elif head.text == "conflict":
            x = ref(ln.name())
            ln.op("#")
            y = ref(ln.name())
            rel["conflict"].append((x, y))
        elif head.text == "cause":
            x = ref(ln.name())
            ln.op("->")
            y = ref(ln.name())
            rel["causes"].append((x, y))
        elif head.text in ("drop", "add"):
            ln.op("[")
            c = ref(ln.name())
            ln.op("->")
            t = ref(ln.name())
            ln.op("]")
            ln.keyword("by")
            m = ref(ln.name())
            rel["drops" if head.text == "drop" else "adds"].append((c, m, t))
        elif head.text == "bundle":
            members = [ref(tok) for tok in ln.set()]
            ln.op("->")
            target_tok = ln.name()
            target = ref(target_tok)
            if target in members:
                raise ln.error(f"bundle target {target!r} inside its own bundle", target_tok)
            rel["bundles"].append((frozenset(members), target))
        elif head.text == "disabling":
            x = ref(ln.name())
            ln.op("~>")
            y = ref(ln.name())
            rel["disabling"].append((x, y))
        elif head.text == "enable":
            w = [ref(tok) for tok in ln.set()]
            ln.op("|-")
            z = [ref(tok) for tok in ln.set()]
            rel["enablings"].append((frozenset(w), frozenset(z)))
        ln.done()

    if family is None:
        raise ParseError("missing 'structure NAME : FAMILY' header", 1, 1, source)
    declared = set(events)
    for tok, lineno in refs:
        if tok.text not in declared:
            raise ParseError(f"unknown event {tok.text!r}", lineno, tok.col, source)

    cls = FAMILIES[family]
    fields = {"events": frozenset(events)}
    for key, items in rel.items():
        if key in cls.__dataclass_fields__:
            fields[key] = items
    return name, cls(**fields)


def parse_structure(text: str, source: str = "<text>") -> Structure:
    return parse_named(text, source)[1]


def _set(items) -> str:
    return "{" + ", ".join(sorted(items)) + "}"


def serialize(s: Structure, name: str = "S") -> str:
    """Render ``s`` in canonical (sorted) ``.est`` form."""
    lines = [f"structure {name} : {s.family}"]
    if s.events:
        lines.append("events " + " ".join(sorted(s.events)))
    for pair in sorted(getattr(s, "conflict", ()), key=sorted):
        x, y = sorted(pair) if len(pair) == 2 else (next(iter(pair)),) * 2
        lines.append(f"conflict {x} # {y}")
    for c, t in sorted(getattr(s, "causes", ())):
        lines.append(f"cause {c} -> {t}")
    for c, d, t in sorted(getattr(s, "drops", ()), key=lambda x: (x[0], x[2], x[1])):
        lines.append(f"drop [{c} -> {t}] by {d}")
    for c, a, t in sorted(getattr(s, "adds", ()), key=lambda x: (x[0], x[2], x[1])):
        lines.append(f"add [{c} -> {t}] by {a}")
    for x, y in sorted(getattr(s, "disabling", ())):
        lines.append(f"disabling {x} ~> {y}")
    for members, target in sorted(getattr(s, "bundles", ()), key=lambda b: (b[1], sorted(b[0]))):
        lines.append(f"bundle {_set(members)} -> {target}")
    for w, z in sorted(getattr(s, "enablings", ()), key=lambda e: (len(e[0]), sorted(e[0]), len(e[1]), sorted(e[1]))):
        lines.append(f"enable {_set(w)} |- {_set(z)}")
    return "\n".join(lines) + "\n"
