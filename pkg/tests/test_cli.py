import json
import os
import shutil
import subprocess
import sys

import pytest

from tempo.cli import main
from tempo.corpus_tools import CORPUS_DIR

C = lambda name: os.path.join(CORPUS_DIR, name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_translate(capsys):
    code, out, _ = run(capsys, "translate", "exists x. P(x)")
    assert code == 0 and out.strip() == "<P> exists x. [F] P(x)"
    code, out, _ = run(capsys, "translate", "--closed", "(forall x. P(x)) -> P(y)")
    assert out.strip() == "forall y. [F] (([F] forall x. [F] P(x)) -> [F] P(y))"


def test_parse_and_json(capsys):
    code, out, _ = run(capsys, "parse", "--json", "P(x) & forall y. Q(y)")
    assert code == 0 and json.loads(out)["free_vars"] == ["x"]
    code, _, err = run(capsys, "parse", "P(x")
    assert code == 2 and "offset 3" in err


def test_check_proof(capsys):
    code, out, _ = run(capsys, "check-proof", C("qcirc_bfp.json"))
    assert code == 0 and out.startswith("OK (") and out.strip().endswith("lines)")
    code, out, _ = run(capsys, "check-proof", C("fail_ui_qcirc.json"))
    assert code == 1 and out.startswith("FAIL line 1")
    code, out, _ = run(capsys, "check-proof", C("iqc_ui.json"), "--goal", "p")
    assert code == 1 and "goal mismatch" in out


def test_eval(capsys, tmp_path):
    code, out, _ = run(capsys, "eval-int", "--model", C("model_cd.json"), "--world", "w1",
                       "--assign", "y=b", "--formula", "false")
    assert code == 0 and out.strip() == "false"
    code, out, _ = run(capsys, "eval-int", "--model", C("model_cd.json"), "--world", "w0",
                       "--formula", "forall x. q | P(x)")
    assert out.strip() == "true"
    code, out, _ = run(capsys, "eval-tense", "--model", C("model_ui.json"), "--world", "w0",
                       "--assign", "y=b", "--formula", "[F] (([F] forall x. [F] P(x)) -> [F] P(y))")
    assert code == 0 and out.strip() == "false"
    code, _, err = run(capsys, "eval-int", "--model", C("model_cd.json"), "--world", "w0",
                       "--assign", "y", "--formula", "P(y)")
    assert code == 2
    code, _, _ = run(capsys, "eval-int", "--model", str(tmp_path / "missing.json"), "--world",
                     "w0", "--formula", "false")
    assert code == 2


def test_mbar(capsys, tmp_path):
    out_file = tmp_path / "lift.json"
    code, _, _ = run(capsys, "mbar", "--model", C("model_cd.json"), "-o", str(out_file))
    data = json.loads(out_file.read_text())
    assert code == 0 and data["kind"] == "tense" and sorted(data["outer"]) == ["a", "b"]


def test_find_countermodel(capsys):
    code, out, _ = run(capsys, "--json", "find-countermodel", "--logic", "iqc", "--formula",
                       "(forall x. q | P(x)) -> q | forall x. P(x)")
    data = json.loads(out)
    assert code == 1 and data["found"] and data["model"]["kind"] == "iqc"
    code, out, _ = run(capsys, "find-countermodel", "--logic", "tense", "--formula", "[F] p -> p")
    assert code == 0 and out.startswith("no countermodel")
    code, out, _ = run(capsys, "find-countermodel", "--logic", "tense", "--formula",
                       "forall x. P(x) | ~P(x)", "--cap", "2")
    assert code == 1 and out.startswith("inconclusive")
    code, out, _ = run(capsys, "find-countermodel", "--logic", "qk", "--formula", "[F] p -> p",
                       "--max-worlds", "1", "--max-outer", "1")
    assert code == 1


def test_enum_frames(capsys):
    code, out, _ = run(capsys, "enum-frames", "--kind", "posets", "--max-worlds", "2")
    assert code == 0 and out.startswith("3 posets")
    code, out, _ = run(capsys, "--json", "enum-frames", "--kind", "preorders", "--max-worlds", "2")
    assert json.loads(out)["count"] == 4
    code, out, _ = run(capsys, "enum-frames", "--kind", "preorders", "--max-worlds", "4", "--iso")
    assert out.startswith("33 preorders")


def test_compile_proof(capsys, tmp_path):
    out_file, trace = tmp_path / "out.json", tmp_path / "trace"
    code, out, _ = run(capsys, "compile-proof", C("iqc_mono_exists.json"), "-o", str(out_file),
                       "--trace", str(trace))
    assert code == 0 and "OK (" in out
    assert (trace / "final.json").read_text() == out_file.read_text()
    assert any(n.startswith("line001_") for n in os.listdir(trace))
    code, out, _ = run(capsys, "check-proof", str(out_file))
    assert code == 0
    code, _, err = run(capsys, "compile-proof", C("qcirc_bfp.json"))
    assert code == 1 and "expected IQC" in err


def test_usage_errors(capsys, tmp_path):
    assert run(capsys)[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "check-proof", str(bad))[0] == 2


def test_corpus_run_no_compile(capsys, tmp_path):
    d = tmp_path / "corpus"
    shutil.copytree(CORPUS_DIR, d)
    code, out, _ = run(capsys, "corpus", "run", "--dir", str(d), "--no-compile")
    assert code == 0 and not any(l.startswith("FAIL") for l in out.splitlines())
    with open(d / "iqc_identity.json") as fh:
        data = json.load(fh)
    data["lines"][0]["formula"] = "p | ~p"
    (d / "iqc_identity.json").write_text(json.dumps(data))
    code, out, _ = run(capsys, "corpus", "run", "--dir", str(d), "--no-compile")
    assert code == 1 and any(l.startswith("FAIL  iqc_identity.json") for l in out.splitlines())


@pytest.mark.skipif(shutil.which("tempo") is None, reason="console script not installed")
def test_console_script():
    r = subprocess.run(["tempo", "translate", "forall x. P(x)"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "[F] forall x. [F] P(x)"
    r = subprocess.run([sys.executable, "-m", "tempo.cli", "parse", "[Q] p"], capture_output=True,
                       text=True)
    assert r.returncode == 2
