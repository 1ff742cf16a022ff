from __future__ import annotations

import json
import subprocess
import sys

import pytest

from dynes.cli import main
from dynes.corpus import example_path


def path(name: str) -> str:
    return str(example_path(name))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_traces_json(capsys):
    code, out, _ = run(capsys, "traces", path("sigma_xi"), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["structure"] == "sigma_xi"
    assert doc["result kind"] == "traces"
    assert len(doc["result"]) == 11
    assert doc["result"][0] == []
    assert list(doc) == sorted(doc)


def test_json_is_byte_identical_across_runs(capsys):
    outs = {run(capsys, "posets", path("sigma_xi"), "--mode", "early", "--json")[1] for _ in range(3)}
    assert len(outs) == 1


def test_equiv_exit_codes(capsys):
    code, out, _ = run(capsys, "equiv", path("lemma1_delta"), path("lemma1_delta_prime"), "--kind", "state")
    assert code == 3
    assert "lemma1_delta_prime" in out and '"config": ["a"]' in out
    code, out, _ = run(capsys, "equiv", path("sigma_xi"), path("sigma_xi"))
    assert code == 0 and out.startswith("equal")


def test_equiv_json_witness(capsys):
    code, out, _ = run(capsys, "equiv", path("lemma1_delta"), path("lemma1_delta_prime"), "--kind", "transition", "--json")
    doc = json.loads(out)
    assert code == 3
    assert doc["equal"] is False and doc["side"] == "right"
    assert doc["result"] == [[[], ["a", "b"]]]


def test_configs_and_transitions(capsys):
    code, out, _ = run(capsys, "configs", path("beta_gamma"))
    assert code == 0 and out.split() == ["{}", "{a}", "{b}", "{a,c}", "{b,c}"]
    code, out, _ = run(capsys, "configs", path("rho_sigma"), "--semantics", "step", "--json")
    assert json.loads(out)["result"] == [[], ["e"], ["f"], ["e", "f"]]
    code, out, _ = run(capsys, "transitions", path("rho_sigma"))
    assert "{f} -> {e,f}" in out.splitlines() and "{e} -> {e,f}" not in out.splitlines()


def test_dot_output(capsys):
    code, out, _ = run(capsys, "transitions", path("rho_sigma"), "--dot")
    assert code == 0
    assert out.startswith('digraph "rho_sigma" {')
    assert '[label="{e,f}"]' in out and '[label="{}"]' in out
    code, out, _ = run(capsys, "states", path("lemma1_delta"), "--dot")
    assert '[label="{a}\\ncs d:{c}"]' in out


def test_states_json(capsys):
    code, out, _ = run(capsys, "states", path("lemma1_delta"), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["result kind"] == "states"
    assert {"config": ["a"], "cs": {"b": [], "c": [], "d": ["c"]}} in doc["result"]


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", path("sigma_xi"), "--to", "des")
    assert code == 0
    assert out.splitlines()[0] == "structure sigma_xi_des : DES"
    assert "bundle {a, c} -> b" in out


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", path("fig2_ebes"))
    assert code == 0 and "valid EBES" in out
    bad = tmp_path / "bad.est"
    bad.write_text("# header comes next\nstructure x : BES\nevents a b c\nbundle {a, b} -> c\n")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 2
    assert f"{bad}:2:" in err and "stability" in err


def test_parse_error_names_file_and_line(capsys, tmp_path):
    bad = tmp_path / "bad.est"
    bad.write_text("structure x : SES\nevents a\ncause a -> zz\n")
    code, _, err = run(capsys, "traces", str(bad))
    assert code == 2 and f"{bad}:3:" in err


def test_semantic_error_exit_code(capsys):
    code, _, err = run(capsys, "states", path("sigma_xi"))
    assert code == 2 and "needs a DCES" in err and "sigma_xi.est:" in err
    code, _, err = run(capsys, "translate", path("xi_sigma"), "--to", "ses")
    assert code == 2 and "no translation" in err


def test_usage_errors(capsys):
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "equiv", path("sigma_xi"))[0] == 2
    assert run(capsys, "verify")[0] == 2
    assert run(capsys, "traces", "/nonexistent.est")[0] == 2


def test_verify_claim(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "lem6")
    assert code == 0
    assert out.startswith("PASS lem6")


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--claim", "lem13", "--claim", "lem1", "--json")
    doc = json.loads(out)
    assert code == 1
    assert [c["claim"] for c in doc["result"]] == ["lem13", "lem1"]
    assert [c["passed"] for c in doc["result"]] == [True, False]


def test_search_commands(capsys):
    code, out, _ = run(capsys, "search", "--family", "SES", "--events", "e,f", "--target", path("xi_sigma"))
    assert code == 0 and out.startswith("exhausted-none: explored 1250")
    code, out, _ = run(capsys, "search", "--claim", "lem6", "--max-structures", "500", "--json")
    doc = json.loads(out)
    assert code == 3 and doc["status"] == "budget-exceeded" and doc["explored"] == 500
    assert run(capsys, "search", "--family", "SES")[0] == 2
    assert run(capsys, "search", "--claim", "thm2-roundtrip")[0] == 2


def test_corpus_listing(capsys):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and "sigma_xi" in out and "lemma6_des" in out
    code, out, _ = run(capsys, "corpus", "xi_sigma")
    assert "disabling e ~> f" in out
    code, out, _ = run(capsys, "corpus", "xi_sigma", "--json")
    assert all(f["holds"] for f in json.loads(out)["result"])


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dynes.cli", "traces", path("xi_sigma")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.split("\n")[:4] == ["(empty)", "e", "f", "e f"]
