import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from pcalab.cli import EXIT_MISUSE, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, main

GOLDEN = Path(__file__).parent / "golden"


def run(*argv):
    buf = io.StringIO()
    rc = main(list(argv), buf)
    return rc, buf.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines()]


@pytest.mark.parametrize("argv,golden,status", [
    (["eval", "K 3 5", "--fuel", "100"], "eval_k35.jsonl", EXIT_OK),
    (["quine", "--sample", "3"], "quine.jsonl", EXIT_OK),
    (["decode", "250"], "decode_250.jsonl", EXIT_OK),
    (["k2-nonextend", "--depth", "6"], "k2_nonextend.jsonl", EXIT_OK),
    (["k2-diag", "const-7-after-3"], "k2_diag_const7.jsonl", EXIT_OK),
    (["fixpoint", "pad-7", "--sample", "5"], "fixpoint_pad7.jsonl", EXIT_OK),
    (["adn", "--delta", "identity"], "adn_identity_delta.jsonl", EXIT_MISUSE),
    (["arslanov", "oscillating"], "arslanov_oscillating.jsonl", EXIT_MISUSE),
])
def test_golden_transcripts(argv, golden, status):
    rc, out = run(*argv)
    assert rc == status
    assert out == (GOLDEN / golden).read_text()


def test_eval_value():
    rc, out = run("eval", "K 3 5", "--fuel", "100")
    (rec,) = records(out)
    assert rec["result"] == "value" and rec["value"] == "3"


def test_quine_transcript():
    rc, out = run("quine", "--sample", "0")
    (rec,) = records(out)
    assert rec["ok"] and rec["x"] == 0 and rec["witness"] > 0


def test_adn_even_const_sample_30():
    rc, out = run("adn", "--psi", "even-const", "--delta", "sample", "--sample", "30")
    recs = records(out)
    assert rc == EXIT_OK
    kinds = [r["check"] for r in recs[1:]]
    assert kinds == ["adn-clause-2" if n % 2 == 0 else "adn-clause-3" for n in range(31)]
    assert all(r["ok"] for r in recs)


def test_violation_status():
    rc, out = run("adn", "--swapped", "--sample", "2")
    assert rc == EXIT_VIOLATION
    assert any(r.get("verdict") == "unknown" for r in records(out))
    rc, _ = run("k2-nonextend", "--depth", "2")
    assert rc == EXIT_VIOLATION


def test_misuse_status():
    assert run("k2-diag", "identity")[0] == EXIT_MISUSE


@pytest.mark.parametrize("argv", [["bogus"], ["eval", "K", "--nope"], ["eval", "K ("],
                                  ["fixpoint", "nosuch"], ["adn", "--psi", "nosuch"],
                                  ["arslanov", "nosuch"], ["k2-diag", "nosuch"],
                                  ["compile-lambda", r"\x. y"], []])
def test_usage_errors(argv, capsys):
    assert main(argv, io.StringIO()) == EXIT_USAGE


def test_fuel_env_override(monkeypatch):
    monkeypatch.setenv("PCALAB_FUEL", "2")
    rc, out = run("eval", "succ (succ (succ 1))")
    (rec,) = records(out)
    assert rec["fuel"] == 2 and rec["result"] == "out-of-fuel"
    monkeypatch.setenv("PCALAB_FUEL", "x")
    assert run("eval", "K")[0] == EXIT_USAGE


def test_text_format():
    rc, out = run("eval", "K 3 5", "--format", "text")
    assert out.startswith("eval ") and "value=3" in out


def test_help_lists_defaults(capsys):
    with pytest.raises(SystemExit):
        from pcalab.cli import build_parser
        build_parser().parse_args(["eval", "--help"])
    text = capsys.readouterr().out
    assert "10000" in text and "1000" in text and "json-lines" in text


def test_console_script_matches_module():
    p = subprocess.run([sys.executable, "-m", "pcalab.cli", "encode", r"\x. x", "--lambda"],
                       capture_output=True, text=True)
    assert p.returncode == 0
    assert json.loads(p.stdout)["code"] == 250


def test_instances_listing():
    rc, out = run("instances")
    names = {(r["kind"], r["name"]) for r in records(out)}
    assert ("psi", "even-const") in names and ("delta", "sample") in names
