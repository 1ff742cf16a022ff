"""Command-line front-end: ``dynes <subcommand> ...``.

Exit codes: 0 success, 1 a verified claim failed, 2 usage/parse/semantic
error, 3 ``equiv`` found a difference or ``search`` ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Iterable, Optional

from .corpus import NAMES, all_examples, example_path, load_example
from .equiv import KINDS, equivalent
from .kernel import Dces, Structure, StructureError, validate
from .posets import MODES, Poset, posets
from .search.claims import CLAIM_IDS, SEARCHES, verify_claims
from .search.core import SearchSpec, find_match
from .search.space import SEARCHABLE
from .semantics import DcesState, configurations, dces_state_graph, traces, transition_graph
from .syntax import ParseError, parse_named, serialize
from .translate import TRANSLATIONS, translate

EXIT_OK, EXIT_CLAIM_FAILED, EXIT_ERROR, EXIT_DIFFERENT = 0, 1, 2, 3


class CliError(Exception):
    pass


# --------------------------------------------------------------------------- #
# Rendering
# --------------------------------------------------------------------------- #


def _set_label(items: Iterable[str]) -> str:
    return "{" + ",".join(sorted(items)) + "}"


def _config_order(c) -> tuple:
    return (len(c), sorted(c))


def to_json(value: Any) -> Any:
    """Plain JSON data with every set turned into a sorted array."""
    if isinstance(value, (frozenset, set)):
        items = [to_json(v) for v in value]
        return sorted(items, key=lambda v: (_size_of(v), json.dumps(v, sort_keys=True)))
    if isinstance(value, tuple) or isinstance(value, list):
        return [to_json(v) for v in value]
    if isinstance(value, Poset):
        return {"events": sorted(value.carrier), "order": [list(p) for p in value.strict_pairs()]}
    if isinstance(value, DcesState):
        return {"config": sorted(value.config), "cs": {e: sorted(v) for e, v in value.cs}}
    if isinstance(value, dict):
        return {str(k): to_json(v) for k, v in value.items()}
    if hasattr(value, "family") and hasattr(value, "events"):
        return serialize(value, "match")
    return value


def _size_of(v) -> int:
    return len(v) if isinstance(v, (list, dict, str)) else 0


def _emit_json(structure: str, kind: str, payload: Any, **extra) -> str:
    doc = {"structure": structure, "result kind": kind, "result": to_json(payload), **to_json(extra)}
    return json.dumps(doc, sort_keys=True, indent=2)


def _dot_configs(name: str, nodes, edges) -> str:
    ordered = sorted(nodes, key=_config_order)
    ids = {n: f"n{i}" for i, n in enumerate(ordered)}
    lines = [f'digraph "{name}" {{']
    lines += [f'  {ids[n]} [label="{_set_label(n)}"];' for n in ordered]
    for x, y in sorted(edges, key=lambda e: (_config_order(e[0]), _config_order(e[1]))):
        lines.append(f"  {ids[x]} -> {ids[y]};")
    lines.append("}")
    return "\n".join(lines)


def _state_label(st: DcesState) -> str:
    pending = " ".join(f"{e}:{_set_label(v)}" for e, v in st.cs if v)
    return _set_label(st.config) + (f"\\ncs {pending}" if pending else "")


def _dot_states(name: str, g) -> str:
    ordered = sorted(g.nodes)
    ids = {n: f"s{i}" for i, n in enumerate(ordered)}
    lines = [f'digraph "{name}" {{']
    lines += [f'  {ids[n]} [label="{_state_label(n)}"];' for n in ordered]
    for a, b in sorted(g.edges):
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines)


def _trace_text(t) -> str:
    return " ".join(t) if t else "(empty)"


# --------------------------------------------------------------------------- #
# Loading
# --------------------------------------------------------------------------- #


def _load(path: str) -> tuple[str, Structure]:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"{path}: cannot read: {exc.strerror}") from None
    name, s = parse_named(text, source=path)
    report = validate(s)
    if not report.ok:
        rule, items = report.violations[0]
        raise CliError(f"{path}:{_header_line(text)}: invalid {s.family}: {rule} {_plain(items)}")
    return name, s


def _header_line(text: str) -> int:
    for i, line in enumerate(text.splitlines(), start=1):
        if line.strip().startswith("structure"):
            return i
    return 1


def _where(args) -> str:
    """``file:line`` of the structure declaration an error refers to."""
    path = getattr(args, "file", None) or getattr(args, "target", None) or getattr(args, "left", None)
    if not path:
        return "dynes"
    try:
        return f"{path}:{_header_line(Path(path).read_text(encoding='utf-8'))}"
    except OSError:
        return path


def _plain(items) -> str:
    return json.dumps(to_json(items))


# --------------------------------------------------------------------------- #
# Subcommands
# --------------------------------------------------------------------------- #


def cmd_validate(args) -> int:
    name, s = _load(args.file)
    if args.json:
        print(_emit_json(name, "validate", [], family=s.family, ok=True))
    else:
        print(f"{name}: valid {s.family} with {len(s.events)} events")
    return EXIT_OK


def cmd_traces(args) -> int:
    name, s = _load(args.file)
    ts = sorted(traces(s), key=lambda t: (len(t), t))
    if args.json:
        print(_emit_json(name, "traces", [list(t) for t in ts]))
    else:
        print("\n".join(_trace_text(t) for t in ts))
    return EXIT_OK


def cmd_configs(args) -> int:
    name, s = _load(args.file)
    cs = sorted(configurations(s, args.semantics), key=_config_order)
    if args.json:
        print(_emit_json(name, f"configurations:{args.semantics}", [sorted(c) for c in cs]))
    else:
        print("\n".join(_set_label(c) for c in cs))
    return EXIT_OK


def cmd_transitions(args) -> int:
    name, s = _load(args.file)
    g = transition_graph(s)
    edges = sorted(g.edges, key=lambda e: (_config_order(e[0]), _config_order(e[1])))
    if args.dot:
        print(_dot_configs(name, g.nodes, g.edges))
    elif args.json:
        print(_emit_json(name, "transitions", [[sorted(x), sorted(y)] for x, y in edges]))
    else:
        print("\n".join(f"{_set_label(x)} -> {_set_label(y)}" for x, y in edges))
    return EXIT_OK


def cmd_states(args) -> int:
    name, s = _load(args.file)
    if not isinstance(s, Dces):
        raise CliError(f"{_where(args)}: states needs a DCES, got {s.family}")
    g = dces_state_graph(s)
    if args.dot:
        print(_dot_states(name, g))
    elif args.json:
        nodes = sorted(g.nodes)
        edges = sorted(g.edges)
        print(_emit_json(name, "states", [to_json(n) for n in nodes], edges=[[to_json(a), to_json(b)] for a, b in edges]))
    else:
        for a, b in sorted(g.edges):
            print(f"{_state_label(a)} -> {_state_label(b)}".replace("\\n", " "))
    return EXIT_OK


def cmd_posets(args) -> int:
    name, s = _load(args.file)
    ps = sorted(posets(s, args.mode), key=Poset.sort_key)
    if args.json:
        print(_emit_json(name, f"posets:{args.mode}", [to_json(p) for p in ps]))
    else:
        for p in ps:
            order = ", ".join(f"{x}<{y}" for x, y in p.strict_pairs())
            print(f"{_set_label(p.carrier)} {order}".rstrip())
    return EXIT_OK


def cmd_translate(args) -> int:
    name, s = _load(args.file)
    out = translate(s, args.to)
    text = serialize(out, f"{name}_{args.to}")
    if args.json:
        print(_emit_json(name, f"translate:{args.to}", [], family=out.family, text=text))
    else:
        print(text, end="")
    return EXIT_OK


def cmd_equiv(args) -> int:
    name_a, a = _load(args.left)
    name_b, b = _load(args.right)
    verdict = equivalent(a, b, args.kind, args.mode)
    if args.json:
        print(
            _emit_json(
                f"{name_a} vs {name_b}",
                f"equiv:{args.kind}",
                [] if verdict.equal else [verdict.witness],
                equal=verdict.equal,
                side=verdict.side,
            )
        )
    elif verdict.equal:
        print(f"equal ({args.kind})")
    else:
        owner = name_a if verdict.side == "left" else name_b
        print(f"different ({args.kind}): only {owner} has {json.dumps(to_json(verdict.witness))}")
    return EXIT_OK if verdict.equal else EXIT_DIFFERENT


def cmd_search(args) -> int:
    budget = {}
    if args.max_structures is not None:
        budget["max_structures"] = args.max_structures
    if args.max_seconds is not None:
        budget["max_seconds"] = args.max_seconds
    if args.claim:
        if args.claim not in SEARCHES:
            raise CliError(f"--claim: {args.claim!r} is not a search claim; choose from {', '.join(SEARCHES)}")
        c = SEARCHES[args.claim]
        spec = SearchSpec(c.spec.family, c.spec.alphabet, c.spec.constraints, **budget)
        target, kind, label = c.target_structure(), c.kind, args.claim
    else:
        if not (args.family and args.events and args.target):
            raise CliError("search needs --claim, or --family, --events and --target")
        label, target = _load(args.target)
        spec = SearchSpec(args.family, tuple(args.events.replace(",", " ").split()), (), **budget)
        kind = args.kind
    out = find_match(spec, target, kind)
    if args.json:
        print(
            _emit_json(
                label,
                f"search:{kind}",
                [] if out.structure is None else [out.structure],
                status=out.status,
                explored=out.explored,
                wellformed=out.wellformed,
            )
        )
    else:
        print(f"{out.status}: explored {out.explored} ({out.wellformed} well-formed)")
        if out.structure is not None:
            print(serialize(out.structure, "match"), end="")
    return EXIT_DIFFERENT if out.status == "budget-exceeded" else EXIT_OK


def _corpus_lines() -> list[tuple[bool, str]]:
    out = []
    for entry in all_examples():
        failed = entry.failed_facts()
        ok = not failed
        detail = f"{len(entry.expected_facts)} facts" if ok else "; ".join(f.describe() for f in failed)
        out.append((ok, f"{'PASS' if ok else 'FAIL'} corpus:{entry.name}: {detail}"))
    return out


def cmd_verify(args) -> int:
    if not args.all and not args.claim:
        raise CliError("verify needs --claim ID or --all")
    ids = list(CLAIM_IDS) if args.all else args.claim
    budget = {}
    if args.max_structures is not None:
        budget["max_structures"] = args.max_structures
    if args.max_seconds is not None:
        budget["max_seconds"] = args.max_seconds
    results = verify_claims(ids, **budget)
    corpus = _corpus_lines() if args.all else []
    ok = all(r.passed for r in results) and all(c for c, _ in corpus)
    if args.json:
        payload = [
            {"claim": r.claim, "passed": r.passed, "statement": r.statement, "evidence": r.evidence}
            for r in results
        ]
        print(_emit_json("claims", "verify", payload, corpus=[line for _, line in corpus], passed=ok))
    else:
        for r in results:
            print(r.line())
            print("    " + json.dumps(to_json(r.evidence), sort_keys=True))
        for _, line in corpus:
            print(line)
    return EXIT_OK if ok else EXIT_CLAIM_FAILED


def cmd_corpus(args) -> int:
    if args.name is None:
        entries = all_examples()
        if args.json:
            print(
                _emit_json(
                    "corpus",
                    "corpus",
                    [{"name": e.name, "family": e.structure.family, "description": e.provenance} for e in entries],
                )
            )
        else:
            for e in entries:
                print(f"{e.name:<20} {e.structure.family:<5} {e.provenance}")
        return EXIT_OK
    try:
        entry = load_example(args.name)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None
    if args.json:
        facts = [{"fact": f.describe(), "holds": f.holds(entry.structure)} for f in entry.expected_facts]
        print(_emit_json(entry.name, "corpus", facts, path=str(example_path(entry.name))))
    else:
        print(example_path(entry.name).read_text(encoding="utf-8"), end="")
    return EXIT_OK


# --------------------------------------------------------------------------- #
# Argument parsing
# --------------------------------------------------------------------------- #


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dynes", description="Event structures with dynamic causality.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func, help_: str, *, file=True, json_=True, dot=False):
        p = sub.add_parser(name, help=help_, description=help_)
        if file:
            p.add_argument("file", help=".est structure file")
        if json_:
            p.add_argument("--json", action="store_true", help="emit key-sorted JSON")
        if dot:
            p.add_argument("--dot", action="store_true", help="emit a Graphviz digraph")
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check well-formedness")
    add("traces", cmd_traces, "list all traces")
    p = add("configs", cmd_configs, "list configurations")
    p.add_argument("--semantics", choices=("trace", "step"), default="trace")
    add("transitions", cmd_transitions, "list the transition relation", dot=True)
    add("states", cmd_states, "list the state graph of a DCES", dot=True)
    p = add("posets", cmd_posets, "list the poset family")
    p.add_argument("--mode", choices=MODES, default="early")
    p = add("translate", cmd_translate, "translate into another family")
    p.add_argument("--to", required=True, choices=sorted(TRANSLATIONS))

    p = add("equiv", cmd_equiv, "compare two structures (exit 3 when they differ)", file=False)
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--kind", default="trace", choices=KINDS)
    p.add_argument("--mode", choices=MODES, default=None, help="poset mode for --kind poset")

    p = add("search", cmd_search, "look for an equivalent structure in a whole family", file=False)
    p.add_argument("--claim", help="run the search of a registered claim")
    p.add_argument("--family", choices=SEARCHABLE)
    p.add_argument("--events", help="alphabet, e.g. a,b,c")
    p.add_argument("--target", help=".est file of the target structure")
    p.add_argument("--kind", default="trace", choices=("trace", "config", "transition", "state"))
    p.add_argument("--max-structures", type=int)
    p.add_argument("--max-seconds", type=float)

    p = add("verify", cmd_verify, "replay registered claims (exit 1 if any fails)", file=False)
    p.add_argument("--claim", action="append", choices=CLAIM_IDS, help="claim id (repeatable)")
    p.add_argument("--all", action="store_true", help="all claims plus every corpus example")
    p.add_argument("--max-structures", type=int)
    p.add_argument("--max-seconds", type=float)

    p = add("corpus", cmd_corpus, "list the corpus or print one example", file=False)
    p.add_argument("name", nargs="?", choices=NAMES)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
    except StructureError as exc:
        print(f"error: {_where(args)}: {exc}", file=sys.stderr)
    return EXIT_ERROR


run = main


if __name__ == "__main__":
    sys.exit(main())
