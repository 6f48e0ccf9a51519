import json
import subprocess
import sys

import pytest

from cotreelab.cli import main
from cotreelab.cotree import enumerate_cotrees
from cotreelab.poset import all_posets, classify, format_poset


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate_counts(capsys):
    assert run(capsys, "enumerate", "--nodes", "4", "--count-only") == (0, "1 1 2 4\n", "")


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "--json", "enumerate", "--nodes", "3")
    rows = json.loads(out)["cotrees"]
    assert [r["nodes"] for r in rows] == [1, 2, 3, 3]


def test_leq_witness(capsys):
    code, out, _ = run(capsys, "leq", "@comb:1", "@hcomb:1")
    assert code == 0 and len(out.splitlines()) == 2
    code, out, _ = run(capsys, "leq", "@hcomb:1", "@comb:1")
    assert out == "none\n"


def test_leq_json(capsys):
    code, out, _ = run(capsys, "--json", "leq", "@comb:1", "@hcomb:1")
    data = json.loads(out)
    assert data["leq"] and len(data["map"]) == 3


def test_comb_and_decompose(capsys):
    _, out, _ = run(capsys, "--json", "comb", "@hcomb:3")
    assert json.loads(out)["comb_number"] == 3
    _, out, _ = run(capsys, "--json", "decompose", "@tau:2,2")
    d = json.loads(out)
    assert (d["m"], d["k"], d["parts"]) == (2, 2, ["()"] * 3)


def test_usage_errors(capsys, tmp_path):
    assert run(capsys, "decompose", "@chain:1")[0] == 2
    assert run(capsys, "comb", "@star:3")[0] == 2
    assert run(capsys, "comb", str(tmp_path / "missing"))[0] == 2
    lam = tmp_path / "lam.txt"
    lam.write_text("poset 3\n0 1\n0 2\n")
    assert run(capsys, "leq", "@chain:1", str(lam))[0] == 2
    assert run(capsys, "valid", str(lam), "--formula", "p -> q <- r")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_valid_and_subframe(capsys, tmp_path):
    lam = tmp_path / "lam.txt"
    lam.write_text("poset 3\n0 1\n0 2\n")
    code, out, _ = run(capsys, "valid", str(lam), "--axiom", "prelinearity")
    assert out == "refuted at 0: p={1} q={2}\n"
    assert run(capsys, "valid", "@chain:3", "--axiom", "bilc")[1] == "valid\n"
    assert run(capsys, "--json", "subframe", "@comb:3", "--omit", "@comb:2")[1] == '{"embeds": true}\n'
    assert run(capsys, "--json", "subframe", "@chain:5", "--omit", "@comb:2")[1] == '{"embeds": false}\n'


def test_embed(capsys):
    code, out, _ = run(capsys, "embed", "@comb:1", "@comb:2")
    assert code == 0 and len(out.splitlines()) == 2
    assert run(capsys, "embed", "@comb:2", "@chain:6")[1] == "none\n"


def test_antichain(capsys):
    _, out, _ = run(capsys, "--json", "antichain", "--in-t", "2", "--nodes", "6")
    assert json.loads(out)["size"] == 5


def test_dual_round_trip(capsys, tmp_path):
    for n in range(1, 6):
        for X in all_posets(n):
            if not classify(X).is_coforest:
                continue
            src = tmp_path / "x.txt"
            src.write_text(format_poset(X))
            _, dumped, _ = run(capsys, "dual", str(src))
            alg = tmp_path / "a.txt"
            alg.write_text(dumped)
            _, back, _ = run(capsys, "--json", "dualize-back", str(alg))
            data = json.loads(back)
            from cotreelab.poset import canonical_form, poset_from_covers
            P = poset_from_covers(data["n"], [tuple(c) for c in data["covers"]])
            assert canonical_form(P) == canonical_form(X)
            if classify(X).is_cotree:
                from cotreelab.cotree import CoTree
                assert data["code"] == CoTree.from_poset(X).code


def test_verify_selected(capsys):
    code, out, _ = run(capsys, "verify", "--check", "counterexample", "--check", "ascending-chain")
    assert code == 0
    assert out.splitlines() == ["PASS counterexample [] instances=1", "PASS ascending-chain [n=3,t_max=3] instances=16"]


def test_verify_unknown_check(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--check", "nope"])
    assert exc.value.code == 2


def test_output_is_deterministic_across_runs_and_workers():
    cmd = [sys.executable, "-m", "cotreelab.cli", "--json", "verify",
           "--check", "tau-grid", "--check", "comb-chain", "--check", "counterexample"]
    a = subprocess.run(cmd, capture_output=True, text=True, env={"COTREELAB_WORKERS": "1", "PATH": ""})
    b = subprocess.run(cmd, capture_output=True, text=True, env={"COTREELAB_WORKERS": "3", "PATH": ""})
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
