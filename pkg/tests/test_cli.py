import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from contactlab.cli import main
from contactlab.docs import parse_text
from contactlab.dual_construction import check_cs, check_pcs, check_s2s, TwoPCS

HERE = Path(__file__).parent
FIX = HERE / "fixtures"
GOLD = HERE / "golden"
UPDATE = os.environ.get("CONTACTLAB_UPDATE_GOLDENS") == "1"

# (golden file, argv); fixture paths are relative to the fixtures directory
GOLDENS = [
    ("dualize_b2_full_2pcs.json", ["dualize", "b2_full.json"]),
    ("dualize_b3_chain_2pcs.json", ["dualize", "b3_chain.json", "--kind", "2pcs"]),
    ("dualize_b3_contact_2cs.json", ["dualize", "b3_contact.json", "--kind", "2cs"]),
    ("dualize_b3_bare_stone2.json", ["dualize", "b3_bare.json", "--kind", "stone2"]),
    ("dualize_pair_2pcs.json", ["dualize", "pair_2pcs.json"]),
    ("points_b3_chain_clans.json", ["points", "b3_chain.json"]),
    ("points_b3_bare_grills.json", ["points", "b3_bare.json", "--kind", "grills"]),
    ("points_b3_bare_ultrafilters.json", ["points", "b3_bare.json", "--kind", "ultrafilters"]),
    ("points_grid_clans.json", ["points", "grid_2x2.json"]),
    ("enumerate_2_contact.jsonl", ["enumerate", "--atoms", "2"]),
    ("enumerate_3_contact.jsonl", ["enumerate", "--atoms", "3"]),
    ("enumerate_1_precontact.jsonl", ["enumerate", "--atoms", "1", "--kind", "precontact"]),
    ("export_b3_chain_specialization.dot", ["export", "b3_chain.json"]),
    ("export_grid_adjacency.dot", ["export", "grid_2x2.json", "--dot", "adjacency"]),
    ("export_b3_poset.dot", ["export", "b3_bare.json", "--dot", "poset"]),
    ("export_pair_specialization.dot", ["export", "pair_2pcs.json"]),
]


def run(argv, stdin=None):
    out = io.StringIO()
    cwd = os.getcwd()
    os.chdir(FIX)
    try:
        if stdin is not None:
            old = sys.stdin
            sys.stdin = io.StringIO(stdin)
        code = main(argv, out)
    finally:
        os.chdir(cwd)
        if stdin is not None:
            sys.stdin = old
    return code, out.getvalue()


@pytest.mark.parametrize("golden,argv", GOLDENS, ids=[g for g, _ in GOLDENS])
def test_golden_output(golden, argv):
    code, text = run(argv)
    assert code == 0
    path = GOLD / golden
    if UPDATE:
        path.write_bytes(text.encode("utf-8"))
    assert text.encode("utf-8") == path.read_bytes()
    assert run(argv)[1] == text


def test_enumerate_line_counts():
    assert len(run(["enumerate", "--atoms", "3"])[1].splitlines()) == 8
    assert len(run(["enumerate", "--atoms", "4"])[1].splitlines()) == 64
    assert len(run(["enumerate", "--atoms", "2", "--kind", "precontact"])[1].splitlines()) == 16


def test_enumerate_cap_exit_code(capsys):
    code, _ = run(["enumerate", "--atoms", "6"])
    assert code == 2
    assert "cap" in capsys.readouterr().err


@pytest.mark.parametrize("fixture,kind", [("b2_full.json", "2pcs"), ("b3_chain.json", "2pcs"),
                                          ("b3_contact.json", "2cs"), ("b3_bare.json", "stone2")])
def test_dualized_documents_reparse_and_verify(fixture, kind):
    code, text = run(["dualize", fixture, "--kind", kind])
    assert code == 0
    doc = parse_text(text)
    assert doc.kind == "space-pair" and doc.structure == kind
    if kind == "2pcs":
        assert check_pcs(TwoPCS(doc.pair, doc.r)).ok
    elif kind == "2cs":
        assert check_cs(doc.pair).ok
    else:
        assert check_s2s(doc.pair).ok
    # the emitted document goes back through the CLI
    code, report = run(["verify", "-", "--suite", "representation"], stdin=text)
    assert code == 0 and json.loads(report)["ok"]
    code, back = run(["dualize", "-"], stdin=text)
    assert code == 0 and parse_text(back).kind == "algebra"


def test_algebra_round_trip_through_space():
    code, space = run(["dualize", "b3_chain.json"])
    code, algebra = run(["dualize", "-"], stdin=space)
    doc = parse_text(algebra)
    assert doc.algebra.atoms == ("{p}", "{q}", "{r}")
    assert sorted(doc.relation.core.named_pairs()) == [("{p}", "{q}"), ("{q}", "{r}")]


def test_check_exit_codes(capsys):
    assert run(["check", "b3_chain.json"])[0] == 0
    code, text = run(["check", "bad_table.json"])
    assert code == 1
    assert "FAIL check/axioms/C0" in capsys.readouterr().err
    assert json.loads(text)["ok"] is False
    assert run(["check", "b3_chain.json", "--axioms", "contact"])[0] == 1
    assert run(["check", "missing.json"])[0] == 2


def test_verify_suites():
    for suite in ("representation", "duality", "extensions"):
        code, text = run(["verify", "b3_chain.json", "--suite", suite])
        assert code == 0, text
    code, text = run(["verify", "pair_2pcs.json", "--suite", "all", "--timings"])
    assert code == 0 and "elapsed" in text
    # a 2pcs document is not a duality object; the suite falls back to its algebra
    code, text = run(["verify", "pair_2pcs.json", "--suite", "duality"])
    assert code == 0 and "verified on its algebra" in text


def test_malformed_inputs(capsys):
    assert run(["check", "-"], stdin="{not json")[0] == 2
    assert "line 1" in capsys.readouterr().err
    assert run(["check", "-"], stdin='{"kind": "algebra", "atoms": ["p", "p"]}')[0] == 2
    assert run(["check", "-"], stdin='{"kind": "algebra", "atoms": ["p"], "contact": [["p", "z"]]}')[0] == 2
    assert run(["dualize", "-", "--kind", "2cs"],
               stdin='{"kind": "algebra", "atoms": ["p", "q"], "contact": [["p", "q"]]}')[0] == 1


def test_degenerate_algebra_warns(capsys):
    code, _ = run(["points", "-", "--kind", "grills"], stdin='{"kind": "algebra", "atoms": []}')
    assert code == 0
    assert "degenerate" in capsys.readouterr().err


def test_dot_file_option(tmp_path):
    target = tmp_path / "order.dot"
    code, _ = run(["dualize", "b3_chain.json", "--dot", str(target)])
    assert code == 0
    assert target.read_bytes() == (GOLD / "export_b3_chain_specialization.dot").read_bytes()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "contactlab", "enumerate", "--atoms", "2"],
                          capture_output=True, check=True)
    assert proc.stdout == (GOLD / "enumerate_2_contact.jsonl").read_bytes()
