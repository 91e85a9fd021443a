import json

import pytest

from cospectra.cli import main
from cospectra.fixtures import (
    PRINTED_ETA_G,
    PRINTED_ETA_H,
    PRINTED_PHI,
    PRINTED_PHI_COMPLEMENT_G,
    PRINTED_PHI_COMPLEMENT_H,
    PRINTED_WALKS_G,
    PRINTED_WALKS_H,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines()], err


def test_invariants_worked_example(capsys):
    code, (g, h), err = run(capsys, "invariants", "--paper-example", "--max-power", "9")
    assert code == 0 and "2 graph(s)" in err
    assert g["phi_det_A_minus_xI"] == h["phi_det_A_minus_xI"] == list(PRINTED_PHI)
    assert g["phi_complement_det_A_minus_xI"] == list(PRINTED_PHI_COMPLEMENT_G)
    assert h["phi_complement_det_A_minus_xI"] == list(PRINTED_PHI_COMPLEMENT_H)
    assert (g["eta"], h["eta"]) == (PRINTED_ETA_G, PRINTED_ETA_H)
    assert g["walk_counts"] == list(PRINTED_WALKS_G)
    assert h["walk_counts"] == list(PRINTED_WALKS_H)


def test_invariants_small_panels(capsys):
    code, (k1, star), _ = run(capsys, "invariants", "@", "D?{")
    assert code == 0
    assert k1["phi"] == [0, 1] and k1["walk_matrix"] == [[1]] and k1["eta"] == 1
    assert star["phi"] == [0, 0, 0, -4, 0, 1]


@pytest.mark.parametrize(
    "graphs, verdict",
    [(["--paper-example"], "pass"), (["Dl?", "D?{"], "pass"), (["Bw", "C~"], "not-cospectral")],
)
def test_verify_pair(capsys, graphs, verdict):
    code, (rep,), _ = run(capsys, "verify-pair", *graphs)
    assert code == 0 and rep["verdict"] == verdict
    assert {c["kind"] for c in rep["checks"]} == {
        "walk-counts-mod4", "complement-charpoly-mod4", "eta-parity", "walks-iff-complement"
    }


def test_verify_pair_needs_two(capsys):
    code, _, err = run(capsys, "verify-pair", "Bw")
    assert code == 2 and "exactly two" in err


def test_mine_corpus_with_bad_line(tmp_path, capsys):
    corpus = tmp_path / "c.g6"
    corpus.write_text("Dl?\nD?{\nnot graph6!\nD~{\n")
    code, records, err = run(capsys, "mine", "--input", str(corpus))
    assert code == 0 and "c.g6:3" in err and "1 malformed" in err
    summary = records[-1]
    assert summary["skipped"] == 1 and summary["classes"] == 2 and summary["multi_member_classes"] == 1


def test_mine_exhaustive_output_file(tmp_path, capsys):
    out = tmp_path / "m.jsonl"
    code, _, err = run(capsys, "mine", "--exhaustive", "5", "--output", str(out))
    assert code == 0 and "0 violations" in err
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    assert lines[-1]["type"] == "summary" and lines[-1]["graphs"] == 1 + 2 + 8 + 64 + 1024


def test_certify(capsys):
    code, certs, _ = run(capsys, "certify", "--paper-example", "A_")
    assert code == 0
    assert [c["verdict"] for c in certs] == ["certified-thm1.1", "certified-thm1.1", "not-applicable"]


def test_oracle_k3(capsys):
    code, (rep,), _ = run(capsys, "oracle", "Bw", "--max-power", "4")
    assert code == 0 and rep["verdict"] == "pass"
    assert rep["lengths"][3]["closed_walks"] == rep["lengths"][3]["trace"] == 18


def test_check_lemmas_matrix(capsys):
    code, (rep,), _ = run(capsys, "check-lemmas", "--suite", "matrix", "--count", "10", "--seed", "3")
    assert code == 0 and rep["verdict"] == "pass" and rep["pairs"] == 10


def test_witnesses_and_generate(tmp_path, capsys):
    trees = tmp_path / "t.g6"
    assert main(["generate", "--trees", "8", "--output", str(trees)]) == 0
    capsys.readouterr()
    code, (rep,), _ = run(capsys, "witnesses", "--kind", "tree-matching", "--input", str(trees))
    assert code == 0 and rep["trees"] == 1 + 1 + 1 + 2 + 3 + 6 + 11 + 23
    code, (rep,), _ = run(capsys, "witnesses", "--kind", "triangle-parity", "--exhaustive", "4")
    assert code == 0 and rep["verdict"] == "pass"


@pytest.mark.parametrize(
    "argv, code",
    [
        (["invariants", "bad!"], 2),
        (["invariants", "--input", "/nonexistent/file"], 2),
        (["mine", "--exhaustive", "8"], 2),
        (["generate"], 2),
    ],
)
def test_exit_codes(capsys, argv, code):
    assert main(argv) == code
    assert "error:" in capsys.readouterr().err


def test_resource_cap_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("COSPECTRA_CAP", "10")
    assert main(["oracle", "C~", "--max-power", "6"]) == 3


def test_theorem_violation_exit_code(capsys, monkeypatch):
    from cospectra import cli, congruence

    def broken(g, h, m=None):
        return congruence.CongruenceReport("p", "walk-counts-mod4", True, [congruence.Check(0, 0, 1, 4)])

    monkeypatch.setattr(cli, "check_walk_mod4_pair", broken)
    assert main(["verify-pair", "--paper-example"]) == 4


def test_argparse_rejects_nonpositive(capsys):
    with pytest.raises(SystemExit):
        main(["mine", "--workers", "0"])
