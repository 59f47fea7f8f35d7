import json
import subprocess
import sys

import pytest

from chowmot import CrossCheckError
from chowmot.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_fm_decompose_table(capsys):
    code, out, _ = run_cli(capsys, "fm", "decompose", "--n", "2", "--dim", "3")
    assert code == 0
    assert "h(X^2)" in out
    assert "h(X)(1)" in out
    assert "h(X)(2)" in out


def test_fm_decompose_n1(capsys):
    code, out, _ = run_cli(capsys, "fm", "decompose", "--n", "1", "--dim", "2")
    assert code == 0
    rows = [line for line in out.splitlines() if line and line[0].isdigit()]
    assert len(rows) == 1
    assert "h(X)" in rows[0]


def test_fm_decompose_json_matches_display(capsys):
    code, out, _ = run_cli(capsys, "fm", "decompose", "--n", "3", "--dim", "2",
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "fm decompose"
    entries = {(e["k"], e["i"]): e["mult"] for e in doc["result"]["entries"]}
    assert entries == {(3, 0): 1, (2, 1): 3, (1, 1): 1, (1, 2): 4, (1, 3): 1}


def test_json_output_is_deterministic_and_roundtrips(capsys):
    _, out1, _ = run_cli(capsys, "fm", "decompose", "--n", "3", "--dim", "2",
                         "--format", "json")
    _, out2, _ = run_cli(capsys, "fm", "decompose", "--n", "3", "--dim", "2",
                         "--format", "json")
    assert out1 == out2
    parsed = json.loads(out1)
    assert json.dumps(parsed, indent=2) + "\n" == out1


def test_fm_rank_values(capsys):
    code, out, _ = run_cli(capsys, "fm", "rank", "--n", "5", "--dim", "1",
                           "--ranks", "projective")
    assert code == 0
    assert "total rank: 178" in out
    code, out, _ = run_cli(capsys, "fm", "rank", "--n", "5", "--dim", "2")
    assert code == 0
    assert "total rank: 7644" in out
    code, out, _ = run_cli(capsys, "fm", "rank", "--n", "1", "--dim", "2")
    assert "total rank: 3" in out


def test_fm_rank_from_file(tmp_path, capsys):
    ranks = tmp_path / "ranks.json"
    ranks.write_text(json.dumps({"1": 2, "2": 4}))
    code, out, _ = run_cli(capsys, "fm", "rank", "--n", "2", "--dim", "1",
                           "--ranks", str(ranks))
    assert code == 0
    assert "total rank: 4" in out
    short = tmp_path / "short.json"
    short.write_text(json.dumps({"1": 2}))
    code, _, err = run_cli(capsys, "fm", "rank", "--n", "2", "--dim", "1",
                           "--ranks", str(short))
    assert code == 2
    assert "missing" in err


def test_fm_genfun_examples(capsys):
    code, out, _ = run_cli(capsys, "fm", "genfun", "--dim", "2", "--order", "3")
    assert code == 0
    lines = out.splitlines()
    assert any(line.startswith("1  1") for line in lines)
    assert any(line.startswith("2  x") for line in lines)

    code, out, _ = run_cli(capsys, "fm", "genfun", "--dim", "1", "--order", "4",
                           "--format", "json")
    doc = json.loads(out)
    polys = {e["n"]: e["poly"] for e in doc["result"]["entries"]}
    assert polys[2] == "0"
    assert polys[3] == "x"
    assert polys[4] == "x + x^2"


def test_fm_betti(capsys):
    code, out, _ = run_cli(capsys, "fm", "betti", "--n", "2", "--dim", "1",
                           "--betti", "projective")
    assert code == 0
    assert "1 + 2*t^2 + t^4" in out


def test_quotient_decompose(capsys):
    code, out, _ = run_cli(capsys, "quotient", "decompose", "--n", "2", "--dim", "3")
    assert code == 0
    assert "h(X^(2))" in out
    assert "h(X^(1))(1)" in out
    assert "h(X^(1))(2)" in out

    code, out, _ = run_cli(capsys, "quotient", "decompose", "--n", "3", "--dim", "2",
                           "--format", "json")
    doc = json.loads(out)
    entries = {(tuple(e["nu"]), e["m"]): e["lambda"] for e in doc["result"]["entries"]}
    assert entries[((1,), 2)] == 2

    code, out, _ = run_cli(capsys, "quotient", "decompose", "--n", "1", "--dim", "2")
    assert code == 0
    assert "h(X^(1))" in out


def test_quotient_betti(capsys):
    code, out, _ = run_cli(capsys, "quotient", "betti", "--n", "2", "--dim", "1",
                           "--betti", "projective")
    assert code == 0
    assert "1 + t^2 + t^4" in out


def test_wonderful_decompose_blowup(tmp_path, capsys):
    doc = {"ambient": {"id": "Y", "dim": 5},
           "strata": [{"id": "V", "dim": 2, "contained_in": []}],
           "building": ["V"]}
    path = tmp_path / "blowup.json"
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli(capsys, "wonderful", "decompose", "--file", str(path))
    assert code == 0
    rows = [line.split() for line in out.splitlines() if line.startswith(("Y", "V"))]
    assert [(r[0], r[3], r[4]) for r in rows] == [
        ("Y", "0", "1"), ("V", "1", "1"), ("V", "2", "1")]
    code, out2, _ = run_cli(capsys, "wonderful", "decompose", "--file", str(path),
                            "--iterative", "--order", "V")
    assert code == 0


def test_wonderful_empty_building(tmp_path, capsys):
    path = tmp_path / "plain.json"
    path.write_text(json.dumps({"ambient": {"id": "Y", "dim": 3}}))
    code, out, _ = run_cli(capsys, "wonderful", "decompose", "--file", str(path))
    assert code == 0
    assert "total summands: 1" in out


def test_wonderful_matches_fm_decompose(tmp_path, capsys):
    from chowmot import fm_arrangement
    arr = fm_arrangement(3, 2)
    path = tmp_path / "fm3.json"
    path.write_text(json.dumps(arr.to_document()))
    code, out, _ = run_cli(capsys, "wonderful", "decompose", "--file", str(path),
                           "--format", "json")
    assert code == 0
    doc = json.loads(out)
    aggregated = {}
    for row in doc["result"]["summands"]:
        key = (row["dim"] // 2, row["twist"])
        aggregated[key] = aggregated.get(key, 0) + row["mult"]
    _, fm_out, _ = run_cli(capsys, "fm", "decompose", "--n", "3", "--dim", "2",
                           "--format", "json")
    fm_entries = {(e["k"], e["i"]): e["mult"]
                  for e in json.loads(fm_out)["result"]["entries"]}
    assert aggregated == fm_entries


def test_wonderful_validation_error_exit(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"ambient": {"id": "Y", "dim": 3},
                                "strata": [{"id": "A", "dim": 5}],
                                "building": ["A"]}))
    code, _, err = run_cli(capsys, "wonderful", "decompose", "--file", str(path))
    assert code == 2
    assert "A" in err


def test_missing_file_exit(capsys):
    code, _, err = run_cli(capsys, "wonderful", "decompose", "--file", "/no/such.json")
    assert code == 2
    assert err


def test_cap_exit_code(capsys):
    code, _, err = run_cli(capsys, "fm", "decompose", "--n", "30", "--dim", "2")
    assert code == 3
    assert "cap" in err


def test_unsafe_cap_flag(capsys, monkeypatch):
    monkeypatch.setenv("WONDERFUL_CAP_N", "3")
    code, _, err = run_cli(capsys, "quotient", "decompose", "--n", "4", "--dim", "1")
    assert code == 3
    code, out, _ = run_cli(capsys, "quotient", "decompose", "--n", "4", "--dim", "1",
                           "--unsafe-cap", "5")
    assert code == 0
    assert "h(X^(4))" in out


def test_invalid_flags_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["fm", "decompose", "--n", "two", "--dim", "1"])
    assert exc.value.code == 2


def test_cross_check_exit_4(capsys, monkeypatch):
    import chowmot.cli as cli_mod

    def boom(args):
        raise CrossCheckError("synthetic failure")

    monkeypatch.setitem(cli_mod.__dict__, "cmd_fm_decompose", boom)
    parser = cli_mod.build_parser()
    args = parser.parse_args(["fm", "decompose", "--n", "2", "--dim", "1"])
    monkeypatch.setattr(args, "handler", boom)

    def fake_parse(argv=None):
        return args

    monkeypatch.setattr(cli_mod, "build_parser",
                        lambda: type("P", (), {"parse_args": staticmethod(fake_parse)})())
    code = cli_mod.main(["fm", "decompose", "--n", "2", "--dim", "1"])
    assert code == 4
    assert "cross-check" in capsys.readouterr().err


def test_verify_suites(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "chern")
    assert code == 0
    assert "pass" in out
    code, out, _ = run_cli(capsys, "verify", "--suite", "genfun",
                           "--max-n", "4", "--max-dim", "2")
    assert code == 0
    assert "triple-agreement" in out


def test_verify_failure_exit(capsys, monkeypatch):
    import chowmot.verify as verify_mod
    from chowmot.verify import CheckResult
    monkeypatch.setitem(
        verify_mod.SUITES, "chern",
        lambda max_rank=4: [CheckResult("chern", "forced", False, "synthetic")])
    code, out, _ = run_cli(capsys, "verify", "--suite", "chern")
    assert code == 1
    assert "FAIL" in out


def test_csv_output(capsys):
    code, out, _ = run_cli(capsys, "fm", "decompose", "--n", "2", "--dim", "2",
                           "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,i,mult,summand"
    assert lines[1] == "2,0,1,h(X^2)"


def test_module_entrypoint_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "chowmot", "fm", "rank", "--n", "5", "--dim", "1"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "178" in proc.stdout
