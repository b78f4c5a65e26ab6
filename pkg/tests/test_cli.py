import json
import subprocess
import sys

import pytest

from nlcx.cli import main
from nlcx.generators import read_sequence


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version_runs_as_console_script():
    out = subprocess.run(["nlcx", "--version"], capture_output=True, text=True)
    assert out.returncode == 0
    assert out.stdout.startswith("nlcx ")


def test_gen_inversive_round_trip(tmp_path, capsys):
    p = tmp_path / "s.seq"
    code, _, _ = run(capsys, "gen", "--kind", "inversive", "--q", "5",
                     "-o", str(p))
    assert code == 0
    s = read_sequence(str(p))
    assert s.values == [1, 2, 3]
    assert s.provenance["kind"] == "inversive"


def test_gen_periodic_defaults(tmp_path, capsys):
    p = tmp_path / "s.seq"
    code, _, _ = run(capsys, "gen", "--kind", "periodic", "--q", "7",
                     "--d", "3", "--n", "6", "-o", str(p))
    assert code == 0
    s = read_sequence(str(p))
    assert s.values == [6, 1, 3, 6, 1, 3]
    # without --n the length defaults to three periods
    code, _, _ = run(capsys, "gen", "--kind", "periodic", "--q", "7",
                     "--d", "3", "-o", str(p))
    assert code == 0
    assert len(read_sequence(str(p))) == 9


def test_gen_hermitian(tmp_path, capsys):
    p = tmp_path / "s.seq"
    code, _, _ = run(capsys, "gen", "--kind", "hermitian", "--ell", "2",
                     "-o", str(p))
    assert code == 0
    assert read_sequence(str(p)).values == [1, 0, 0]


def test_gen_random_seeded(tmp_path, capsys):
    a, b = tmp_path / "a.seq", tmp_path / "b.seq"
    for p in (a, b):
        assert run(capsys, "gen", "--kind", "random", "--q", "3",
                   "--n", "20", "--seed", "42", "-o", str(p))[0] == 0
    assert read_sequence(str(a)).values == read_sequence(str(b)).values


def test_gen_missing_params_exit_2(capsys):
    assert run(capsys, "gen", "--kind", "periodic", "--q", "7")[0] == 2
    assert run(capsys, "gen", "--kind", "inversive", "--q", "6")[0] == 2
    assert run(capsys, "gen", "--kind", "random", "--q", "3")[0] == 2
    assert run(capsys, "gen", "--kind", "hermitian")[0] == 2


def test_analyze_json(tmp_path, capsys):
    p = tmp_path / "s.seq"
    run(capsys, "gen", "--kind", "inversive", "--q", "13", "-o", str(p))
    code, out, _ = run(capsys, "analyze", "--in", str(p), "--kind", "nk",
                       "--k", "1", "--witness")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["kind"] == "nk" and doc["k"] == 1 and doc["n"] == 11
    assert doc["value"] >= 5  # (11-1)/(1+1)
    assert "witness" in doc
    assert doc["meta"]["field"].startswith("q=13")


def test_analyze_csv_and_text(tmp_path, capsys):
    p = tmp_path / "s.seq"
    run(capsys, "gen", "--kind", "inversive", "--q", "7", "-o", str(p))
    code, out, _ = run(capsys, "analyze", "--in", str(p), "--kind", "lin",
                       "--format", "csv")
    assert code == 0
    rows = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert rows[0] == "kind,k,n,value"
    assert rows[1].startswith("lin,,5,")
    code, out, _ = run(capsys, "analyze", "--in", str(p), "--kind", "moc",
                       "--format", "text")
    assert code == 0
    assert "moc complexity" in out


def test_analyze_profile(tmp_path, capsys):
    p = tmp_path / "s.seq"
    run(capsys, "gen", "--kind", "random", "--q", "2", "--n", "12",
        "--seed", "1", "-o", str(p))
    code, out, _ = run(capsys, "analyze", "--in", str(p), "--kind", "nk",
                       "--k", "1", "--profile")
    assert code == 0
    rows = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert rows[0] == "n,value"
    assert len(rows) == 13
    vals = [int(r.split(",")[1]) for r in rows[1:]]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_analyze_requires_k(tmp_path, capsys):
    p = tmp_path / "s.seq"
    run(capsys, "gen", "--kind", "inversive", "--q", "7", "-o", str(p))
    assert run(capsys, "analyze", "--in", str(p), "--kind", "nk")[0] == 2


def test_analyze_missing_file(capsys):
    assert run(capsys, "analyze", "--in", "/nonexistent.seq",
               "--kind", "lin")[0] == 2


def test_verify_csv_and_exit_zero(capsys):
    code, out, err = run(capsys, "verify", "--construction", "inversive",
                         "--q", "5", "--kmax", "2")
    assert code == 0
    rows = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert rows[0] == "theorem,n,k,bound_num,bound_den,computed,pass"
    assert all(r.endswith(",true") for r in rows[1:])
    summary = json.loads(err)
    assert summary["summary"]["all_passed"] is True


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--construction", "hermitian",
                       "--ell", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["summary"]["all_passed"] is True
    assert all(ch["pass"] for ch in doc["checks"])


def test_verify_kinds_filter(capsys):
    code, out, _ = run(capsys, "verify", "--construction", "inversive",
                       "--q", "7", "--kinds", "lin", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert {ch["theorem"] for ch in doc["checks"]} == {"inversive-lin"}


def test_verify_bad_construction_exit_2(capsys):
    assert run(capsys, "verify", "--construction", "inversive")[0] == 2


def test_count_csv(capsys):
    code, out, _ = run(capsys, "count", "--q", "2", "--k", "1",
                       "--n", "3", "--m", "1")
    assert code == 0
    rows = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert rows == ["q,k,n,m,count,bound,pass", "2,1,3,1,6,8,true"]


def test_count_guard_exit_2(capsys):
    code, _, err = run(capsys, "count", "--q", "2", "--k", "1",
                       "--n", "64", "--m", "2")
    assert code == 2
    assert "guard" in err


def test_profile_csv_and_grid(capsys):
    code, out, _ = run(capsys, "profile", "--q", "2", "--k", "1",
                       "--nmax", "16", "--samples", "25", "--seed", "4")
    assert code == 0
    rows = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert rows[0] == "n,mean,min,max,p05,p50,p95,ref"
    assert [int(r.split(",")[0]) for r in rows[1:]] == [2, 4, 8, 16]


def test_profile_json_custom_grid_threads(capsys):
    code, out, _ = run(capsys, "profile", "--q", "3", "--k", "2",
                       "--nmax", "9", "--grid", "3,6,9", "--samples", "20",
                       "--seed", "8", "--threads", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [r["n"] for r in doc["rows"]] == [3, 6, 9]
    assert doc["schema"] == 1


def test_hermitian_dumps(capsys):
    code, out, _ = run(capsys, "hermitian", "--ell", "2", "--dump", "points")
    assert code == 0
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert len(body) == 9  # 2**3 + 1
    assert "inf" in body

    code, out, _ = run(capsys, "hermitian", "--ell", "2", "--dump", "orbits")
    assert code == 0
    assert "Q-orbit" in out

    code, out, _ = run(capsys, "hermitian", "--ell", "2", "--dump", "h",
                       "--t", "1")
    assert code == 0
    assert "valuation_at_infinity = -1" in out
    assert "phi^1 h" in out


def test_stanza_comments_present(capsys):
    _, out, _ = run(capsys, "count", "--q", "2", "--k", "1", "--n", "4",
                    "--m", "1")
    comments = [ln for ln in out.splitlines() if ln.startswith("#")]
    assert any("nlcx 0.1.0" in c for c in comments)
    assert any("params" in c for c in comments)


def test_env_thread_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("NLCX_THREADS", "2")
    code, out, _ = run(capsys, "profile", "--q", "2", "--k", "1",
                       "--nmax", "8", "--samples", "10", "--seed", "1")
    assert code == 0
    monkeypatch.setenv("NLCX_THREADS", "0")
    code, _, err = run(capsys, "profile", "--q", "2", "--k", "1",
                       "--nmax", "8", "--samples", "10", "--seed", "1")
    assert code == 2
