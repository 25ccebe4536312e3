import io
import json
import subprocess
import sys

import pytest

from metricdim import harness
from metricdim.cli import main
from metricdim.families import complete, cycle, daisy
from metricdim.graph import encode_graph6

D44 = encode_graph6(daisy([4, 4]))
K4 = encode_graph6(complete(4))


def _json_lines(text):
    return [json.loads(x) for x in text.splitlines() if x.strip()]


def test_compute_modes(capsys):
    assert main(["compute", D44]) == 0
    out = _json_lines(capsys.readouterr().out)[0]
    assert out["size"] == 3 and out["mode"] == "vertex" and len(out["witness"]) == 3
    assert main(["compute", K4, "--mode", "mixed"]) == 0
    assert _json_lines(capsys.readouterr().out)[0]["mode"] == "mixed"


def test_compute_breakdown(capsys):
    assert main(["compute", D44, "--breakdown"]) == 0
    rec = _json_lines(capsys.readouterr().out)[0]
    for key in ("graph6", "n", "m", "c", "L", "B", "b", "c_abc", "c_ade", "tau_vi", "tau_ei",
                "dim_formula", "edim_formula", "dim_exact", "edim_exact", "extremal"):
        assert key in rec
    assert rec["dim_formula"] == rec["dim_exact"] == 3
    assert main(["compute", K4, "--breakdown"]) == 2


def test_compute_stdin(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(f"{K4}\n# skip\n{encode_graph6(cycle(7))}\nbad!\n"))
    assert main(["compute", "-"]) == 2
    captured = capsys.readouterr()
    assert [r["size"] for r in _json_lines(captured.out)] == [3, 2]
    assert "line 4" in captured.err


def test_compute_cap_is_skipped(capsys):
    assert main(["compute", K4, "--pair-cap", "2"]) == 0
    assert _json_lines(capsys.readouterr().out)[0]["status"].startswith("SKIPPED")


def test_bad_graph6_is_usage_error(capsys):
    assert main(["classify", "~~"]) == 2
    assert main(["compose", "A"]) == 2
    capsys.readouterr()


def test_classify_and_compose(capsys):
    assert main(["classify", D44]) == 0
    cl = _json_lines(capsys.readouterr().out)[0]
    assert cl["is_daisy"] and cl["dim_exact"] == 3
    assert main(["compose", D44, "--mode", "edge"]) == 0
    cert = _json_lines(capsys.readouterr().out)[0]
    for key in ("blocks", "per_block_dim", "p", "q", "S_star", "bound", "achieved", "gamma_edges", "E_prime"):
        assert key in cert
    assert cert["verified"] and cert["achieved"] <= cert["bound"]
    assert main(["compose", encode_graph6(cycle(5))]) == 2
    capsys.readouterr()


def test_verify_formula(capsys):
    assert main(["verify-formula", "--max-n", "7"]) == 0
    out = _json_lines(capsys.readouterr().out)[0]
    # 78 connected cacti with a cycle on 3..7 vertices (counted from the networkx atlas)
    assert out["checked"] == 78 and out["mismatches"] == []
    assert main(["verify-formula", "--max-n", "20"]) == 2
    capsys.readouterr()


def test_scan_to_file(tmp_path, capsys):
    out, summ = tmp_path / "r.jsonl", tmp_path / "s.json"
    code = main(["scan", "--source", "enumerate:6", "--filter", "delta2,exclude-cycles",
                 "--check", "conjecture34", "--check", "blocks", "--out", str(out), "--summary", str(summ)])
    assert code == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary == json.loads(summ.read_text())
    assert summary["records"] == len(_json_lines(out.read_text())) > 0
    assert summary["exit_code"] == 0 and summary["fails"] == []


def test_scan_to_stdout_puts_summary_on_stderr(capsys):
    assert main(["scan", "--source", "random:6,8,3,1", "--filter", "delta2"]) == 0
    captured = capsys.readouterr()
    assert len(_json_lines(captured.out)) == 3
    assert json.loads(captured.err)["records"] == 3


def test_scan_usage_errors(capsys):
    assert main(["scan", "--source", "nowhere:1"]) == 2
    assert main(["scan", "--source", "enumerate:4", "--check", "bogus"]) == 2
    with pytest.raises(SystemExit):
        main(["scan"])
    capsys.readouterr()


def test_scan_exit_code_on_fail(capsys, monkeypatch):
    def always_fail(g, rec, witnesses, task):
        rec.status["conjecture34"] = harness.FAIL

    monkeypatch.setitem(harness._CHECKS, "conjecture34", always_fail)
    assert main(["scan", "--source", "enumerate:3"]) == 1
    assert json.loads(capsys.readouterr().err)["fails"]


def test_console_script():
    proc = subprocess.run([sys.executable, "-m", "metricdim.cli", "compute", D44, "--mode", "edge"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["size"] == 3
