import filecmp
import os

from tempo.corpus_tools import CORPUS_DIR, build_corpus, load_manifest, run_corpus


def test_shipped_corpus_passes_with_compilation():
    rep = run_corpus(compile_golden=True)
    assert rep.ok, [r for r in rep.rows if not r[1]]
    assert len(rep.rows) >= 60


def test_manifest_shape():
    man = load_manifest()
    iqc = [e for e in man["proofs"] if e["logic"] == "IQC"]
    assert len(iqc) >= 20 and all("compile" in e for e in iqc)
    assert any(e["expect"].startswith("fails") for e in man["proofs"])
    for e in man["proofs"] + man["models"]:
        assert os.path.exists(os.path.join(CORPUS_DIR, e["file"])), e["file"]


def test_rebuild_is_byte_identical(tmp_path):
    build_corpus(str(tmp_path))
    shipped = sorted(n for n in os.listdir(CORPUS_DIR) if n.endswith(".json"))
    built = sorted(n for n in os.listdir(tmp_path) if n.endswith(".json"))
    assert built == shipped
    _, mismatch, errors = filecmp.cmpfiles(CORPUS_DIR, tmp_path, shipped, shallow=False)
    assert not mismatch and not errors
    build_corpus(str(tmp_path))
    _, mismatch, _ = filecmp.cmpfiles(CORPUS_DIR, tmp_path, shipped, shallow=False)
    assert not mismatch
    assert run_corpus(str(tmp_path), compile_golden=False).ok
