from __future__ import annotations

import json

import pytest

from qcadditive.cli import main, run
from qcadditive.tables import format_runlength, load_examples, parse_qc_rows

G1 = format_runlength(load_examples()["example1"].gens[0][0])


def test_poly_parse():
    out = run(["poly", "parse", "101^{3}"])
    assert out.exit_code == 0 and out.text == "1+x^2+x^3+x^4"


def test_poly_format():
    assert run(["poly", "format", "1+x^2+x^3+x^4"]).text == "101^{3}"


def test_griesmer_tight():
    out = run(["bound", "griesmer", "--n", "31", "--k2", "5", "--d", "24"])
    assert out.exit_code == 0 and "tight/optimal" in out.text


def test_griesmer_violated():
    assert "violates" in run(["bound", "griesmer", "--n", "31", "--k2", "5", "--d", "25"]).text


def test_verify_table_vi_exits_zero():
    out = run(["verify-tables", "--table", "VI", "--dim-cap", "24"])
    assert out.exit_code == 0


def test_verify_mismatch_exits_one():
    out = run(["verify-tables", "--table", "IV"])
    assert out.exit_code == 1
    bad = [r for r in out.report["rows"] if r["verdict"] == "mismatch"]
    assert [r["no"] for r in bad] == [6, 8, 12]


def test_cyclic():
    out = run(["cyclic", "--n", "7", "--g", "1101"])
    assert out.exit_code == 0 and "[7,4,3]" in out.text


def test_qc_row():
    out = run(["qc", "--row", "V.1"])
    assert out.exit_code == 0 and out.report["distance"]["value"] == 8


def test_qc_flags_example1():
    out = run(["qc", "--n", "31", "--g", G1, "--f", "1^{2}", "--f", "1"])
    assert out.exit_code == 0 and out.report["distance"]["value"] == 24


def test_distance_hamming_mode():
    out = run(["distance", "example1", "--mode", "hamming"])
    assert out.exit_code == 0


def test_derive_extend():
    out = run(["derive", "extend", "example3"])
    assert out.exit_code == 0 and "(64,5,46)_4" in out.text


def test_check_acd_and_lemma8():
    assert "ACD" in run(["check", "acd", "--code", "VI.1"]).text
    out = run(["check", "lemma8", "--row", "VI.1"])
    assert out.report["holds"] and out.report["agrees"]


def test_classify():
    assert run(["bound", "classify", "--params", "(56,11,30)"]).text == "strong-sense-better"


def test_search_requires_seed():
    assert run(["search", "--n", "7", "--g", "1101"]).exit_code == 2


def test_search_findings(tmp_path):
    g = G1
    path = tmp_path / "found.tsv"
    argv = ["search", "--n", "31", "--g", g, "--seed", "1", "--trials", "40", "--max-degree", "2",
            "--findings", str(path)]
    first = run(argv)
    assert first.exit_code == 0
    assert run(["--workers", "3", *argv[:-2]]).report["candidates"] == first.report["candidates"]
    rows = parse_qc_rows(path.read_text())
    assert rows and rows[0].claimed.d == 24


@pytest.mark.parametrize(
    "argv",
    [["frob"], [], ["distance", "nosuch"], ["poly", "parse", "12x"], ["cyclic", "--n", "7", "--g", "101"],
     ["--workers", "0", "poly", "parse", "1"], ["distance", "V.1", "--budget", "31"]],
)
def test_invalid_input_exits_two(argv):
    assert run(argv).exit_code == 2


def test_main_json(capsys):
    code = main(["--json", "poly", "parse", "101^{3}"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert isinstance(payload, dict)


def test_main_error_goes_to_stderr(capsys):
    assert main(["distance", "nosuch"]) == 2
    captured = capsys.readouterr()
    assert "error" in captured.err and captured.out == ""
