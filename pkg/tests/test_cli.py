from __future__ import annotations

import json
import subprocess
import sys


from kneser_toughness.cli import EXIT_CAP, EXIT_FAILED, EXIT_OK, EXIT_USAGE, run


def out_of(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr()


def test_bruteforce_petersen(capsys):
    code, cap = out_of(capsys, ["bruteforce", "--n", "5", "--k", "2"])
    assert code == EXIT_OK and "4/3" in cap.out
    code, cap = out_of(capsys, ["bruteforce", "--n", "5", "--k", "2", "--format", "json"])
    assert json.loads(cap.out)["toughness"] == {"num": "4", "den": "3"}


def test_window(capsys):
    code, cap = out_of(capsys, ["window", "--n", "10", "--k", "3", "--format", "json"])
    obj = json.loads(cap.out)
    assert code == EXIT_OK and (obj["cLow"], obj["cHigh"]) == ("16", "22")
    code, cap = out_of(capsys, ["window", "--n", "10", "--k", "3", "--format", "csv"])
    assert cap.out.splitlines() == ["n,k,cLow,cHigh,empty", "10,3,16,22,False"]


def test_window_threshold(capsys):
    code, cap = out_of(capsys, ["window", "--n", "62", "--k", "5", "--threshold", "--format", "json"])
    obj = json.loads(cap.out)
    assert obj["quadraticThreshold"]["minN"] == "62" and obj["empty"]


def test_verify_writes_certificate(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code, _ = out_of(capsys, ["verify", "--n", "8", "--k", "3", "--output", str(path)])
    assert code == EXIT_OK
    obj = json.loads(path.read_text())
    assert obj["toughness"] == {"num": "5", "den": "3"}
    code, cap = out_of(capsys, ["verify", "--n", "8", "--k", "3", "--recheck", str(path)])
    assert code == EXIT_OK and "re-verified" in cap.out
    obj["evidence"] = obj["evidence"][:3]
    path.write_text(json.dumps(obj))
    code, cap = out_of(capsys, ["verify", "--n", "8", "--k", "3", "--recheck", str(path)])
    assert code == EXIT_FAILED and "uncovered" in cap.out


def test_verify_k12_4_text(capsys):
    code, cap = out_of(capsys, ["verify", "--n", "12", "--k", "4", "--format", "text"])
    assert code == EXIT_OK
    assert cap.out.splitlines()[0] == "t(K(12,4)) = 2"
    assert "KK-SINGLETON" in cap.out


def test_search_reports_every_cell(capsys):
    code, cap = out_of(capsys, ["search", "--n", "7", "--k", "3", "--format", "json"])
    lines = [json.loads(x) for x in cap.out.splitlines()]
    assert code == EXIT_OK
    assert {x["c"] for x in lines} == set(range(5, 14))
    assert all(x["survivor_count"] == 0 for x in lines)


def test_search_output_independent_of_workers(capsys):
    _, one = out_of(capsys, ["search", "--n", "7", "--k", "3", "--format", "json"])
    _, two = out_of(capsys, ["search", "--n", "7", "--k", "3", "--format", "json", "--workers", "2"])
    assert one.out == two.out


def test_search_unsupported(capsys):
    code, cap = out_of(capsys, ["search", "--n", "8", "--k", "3"])
    assert code == EXIT_USAGE and "no edge-floor table" in cap.err


def test_enumerate_table(capsys):
    code, cap = out_of(capsys, ["enumerate", "--max-n", "16", "--max-deg", "5", "--min-girth", "6",
                                "--format", "csv"])
    rows = cap.out.splitlines()
    assert code == EXIT_OK and rows[0] == "|C|,maxEdges,edgeFloor"
    assert [int(r.split(",")[1]) for r in rows[1:]] == [6, 7, 9, 10, 12, 14, 16, 18, 21, 22, 24]


def test_spectrum_and_bounds(capsys):
    code, cap = out_of(capsys, ["spectrum", "--n", "7", "--k", "3", "--check", "--format", "json"])
    obj = json.loads(cap.out)
    assert code == EXIT_OK and obj["annihilation"] is True and obj["mu2"] == "2"
    code, cap = out_of(capsys, ["bounds", "--n", "8", "--k", "3", "--kk", "7", "--format", "json"])
    obj = json.loads(cap.out)
    assert obj["hmpCoefficient"] == "8/81" and obj["kk"]["bound"] == "26"
    code, cap = out_of(capsys, ["bounds", "--n", "8", "--k", "3", "--format", "csv"])
    assert "hoffman,21" in cap.out.splitlines()


def test_families(capsys):
    code, cap = out_of(capsys, ["families", "--n", "7", "--k", "3", "--kind", "G2", "--a", "0", "1", "2",
                                "--format", "json"])
    obj = json.loads(cap.out)
    assert code == EXIT_OK and obj["size"] == "13" and obj["intersecting"]
    code, cap = out_of(capsys, ["families", "--n", "9", "--k", "4", "--kind", "G2", "--a", "0", "1", "2", "3"])
    assert code == EXIT_FAILED


def test_export(capsys):
    code, cap = out_of(capsys, ["export", "--n", "5", "--k", "2"])
    lines = cap.out.splitlines()
    assert lines[0] == "10 15" and len(lines) == 16


def test_usage_errors(capsys):
    assert run([]) == EXIT_USAGE
    assert run(["frobnicate"]) == EXIT_USAGE
    assert run(["window", "--n", "6", "--k", "3"]) == EXIT_USAGE
    assert run(["verify", "--n", "11", "--k", "5"]) == EXIT_USAGE
    assert run(["window", "--n", "9", "--k", "3", "--workers", "0"]) == EXIT_USAGE
    capsys.readouterr()


def test_resource_cap(capsys):
    assert run(["export", "--n", "12", "--k", "4", "--vertex-cap", "10"]) == EXIT_CAP
    assert run(["bruteforce", "--n", "7", "--k", "3"]) == EXIT_CAP
    capsys.readouterr()


def test_env_override_only_touches_caps(monkeypatch, capsys):
    monkeypatch.setenv("KNESER_VERTEX_CAP", "5")
    assert run(["export", "--n", "5", "--k", "2"]) == EXIT_CAP
    capsys.readouterr()


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "kneser_toughness.cli", "window", "--n", "9", "--k", "3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "[11, 19]" in proc.stdout


def test_version(capsys):
    assert run(["--version"]) == EXIT_OK
    assert "0.1.0" in capsys.readouterr().out
