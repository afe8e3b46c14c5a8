import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from ptone import cli


def run_cli(*args, env_extra=None, cwd=None):
    import os
    env = dict(os.environ)
    env.setdefault("PTONE_THREADS", "1")
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "ptone.cli", *args],
                          capture_output=True, text=True, env=env, cwd=cwd)


def parse_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


# plumbing units


def test_parse_list_forms():
    assert cli._parse_list("2,3") == [2.0, 3.0]
    assert cli._parse_list("2") == [2.0]
    assert cli._parse_list("0.5:1.5:0.25") == [0.5, 0.75, 1.0, 1.25, 1.5]
    assert cli._parse_list("1,2,3", cast=int) == [1, 2, 3]
    with pytest.raises(ValueError):
        cli._parse_list("")
    with pytest.raises(ValueError):
        cli._parse_list("1:2")                       # malformed range
    with pytest.raises(ValueError):
        cli._parse_list("2:1:0.5")                   # empty range
    with pytest.raises(ValueError):
        cli._parse_list("1.5", cast=int)


def test_format_csv_values_and_meta():
    rows = [{"p": 2.0, "ok": True, "label": 'a,"b"', "n": 3},
            {"p": 1.0 / 3.0, "ok": False, "label": "plain", "n": 1}]
    text = cli.format_csv(["p", "ok", "label", "n"], rows, meta="run stamp")
    lines = text.splitlines()
    assert lines[0] == "# run stamp"
    assert lines[1] == "p,ok,label,n"
    assert lines[2].startswith("2,true,")
    assert '"a,""b"""' in lines[2]                   # RFC-4180 quoting
    assert "0.33333333333333331" in lines[3]         # 17 significant digits
    parsed = parse_csv(text)
    assert float(parsed[1]["p"]) == 1.0 / 3.0        # round-trips exactly


def test_format_csv_field_union_preserves_order():
    rows = [{"a": 1, "b": 2}, {"a": 3, "c": 4}]
    text = cli.format_csv(None, rows)
    lines = text.splitlines()
    assert lines[0] == "a,b,c"
    assert lines[2] == "3,,4"


def test_sort_rows_by_parameter_tuple():
    rows = [{"p": 3.0, "m": 1, "c": 0.0, "r": 1.0},
            {"p": 2.0, "m": 2, "c": 1.0, "r": 1.0},
            {"p": 2.0, "m": 2, "c": -1.0, "r": 1.0}]
    out = cli._sort_rows(rows)
    assert [(r["p"], r["c"]) for r in out] == [(2.0, -1.0), (2.0, 1.0),
                                               (3.0, 0.0)]


def test_pmap_preserves_order(monkeypatch):
    monkeypatch.setenv("PTONE_THREADS", "4")
    assert cli._pmap(lambda x: x * x, range(10)) == [x * x for x in
                                                     range(10)]
    monkeypatch.setenv("PTONE_THREADS", "1")
    assert cli._pmap(lambda x: -x, [3, 1, 2]) == [-3, -1, -2]
    monkeypatch.setenv("PTONE_THREADS", "0")
    with pytest.raises(ValueError):
        cli._threads()


# subcommands end to end


def test_eig_known_eigenvalue():
    res = run_cli("eig", "--p", "2", "--m", "3", "--c", "0", "--r", "1")
    assert res.returncode == 0
    rows = parse_csv(res.stdout)
    assert len(rows) == 1
    assert float(rows[0]["lambda"]) == pytest.approx(9.8696044, rel=1e-5)
    assert float(rows[0]["residual"]) <= 1e-6


def test_eig_rejects_bad_p():
    res = run_cli("eig", "--p", "0.5", "--m", "2", "--c", "0", "--r", "1")
    assert res.returncode == 2
    assert "invalid input" in res.stderr


def test_eig_scaling_ratio():
    res = run_cli("eig", "--p", "2", "--m", "2", "--c", "0", "--r", "1,2")
    rows = parse_csv(res.stdout)
    lam = {float(r["r"]): float(r["lambda"]) for r in rows}
    assert lam[1.0] / lam[2.0] == pytest.approx(4.0, rel=1e-8)


def test_rstar_rejects_p_below_two():
    res = run_cli("rstar", "--p", "1.5", "--m", "2", "--c", "0", "--r", "1")
    assert res.returncode == 2


def test_compare_battery_flags_inadmissible_profile():
    res = run_cli("compare", "--p", "2", "--r", "1")
    assert res.returncode == 0
    rows = parse_csv(res.stdout)
    by_name = {r["profile"]: r for r in rows}
    assert by_name["hyperbolic"]["admissible"] == "true"
    assert float(by_name["hyperbolic"]["margin_rel"]) >= -1e-6
    assert float(by_name["flat-equality"]["margin_rel"]) == 0.0
    assert by_name["inadmissible-sin"]["admissible"] == "false"


def test_kazdan_quadratic_sandwich():
    res = run_cli("kazdan", "--phi", "quadratic", "--p", "2", "--m", "2",
                  "--c", "0", "--r", "1")
    rows = parse_csv(res.stdout)
    assert rows[0]["sandwich_ok"] == "true"
    lam = float(rows[0]["lambda"])
    assert float(rows[0]["psi_inf"]) <= lam <= float(rows[0]["psi_sup"])


def test_surface_report_rows(tmp_path):
    out = tmp_path / "surface.csv"
    res = run_cli("surface", "--surfaces", "plane", "--p", "2", "--r",
                  "1.2", "--out", str(out), "--json",
                  str(tmp_path / "surface.json"))
    assert res.returncode == 0
    rows = parse_csv(out.read_text())
    assert rows[0]["surface"] == "plane"
    payload = json.loads((tmp_path / "surface.json").read_text())
    assert payload["command"] == "surface"
    assert payload["rows"][0]["cor15"] is True


def test_selftest_filter_and_determinism(tmp_path):
    first = tmp_path / "a.csv"
    second = tmp_path / "b.csv"
    r1 = run_cli("selftest", "--filter", "determinism", "--out", str(first))
    r2 = run_cli("selftest", "--filter", "determinism", "--out",
                 str(second))
    assert r1.returncode == 0 and r2.returncode == 0
    assert "[15] PASS" in r1.stdout
    body1 = [ln for ln in first.read_text().splitlines()
             if not ln.startswith("#")]
    body2 = [ln for ln in second.read_text().splitlines()
             if not ln.startswith("#")]
    assert body1 == body2 and len(body1) > 1


def test_selftest_unknown_filter():
    res = run_cli("selftest", "--filter", "nonexistent-criterion")
    assert res.returncode == 2


def test_config_file_merging(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"p": "2,3", "m": 3, "c": "0", "r": "1"}))
    res = run_cli("eig", "--config", str(cfg), "--m", "2")
    rows = parse_csv(res.stdout)
    assert [r["m"] for r in rows] == ["2", "2"]        # flag wins
    assert [r["p"] for r in rows] == ["2", "3"]        # config list used


def test_thread_count_does_not_change_output():
    args = ("eig", "--p", "2,3", "--m", "2", "--c", "-1,0,1", "--r", "1")
    serial = run_cli(*args, env_extra={"PTONE_THREADS": "1"})
    threaded = run_cli(*args, env_extra={"PTONE_THREADS": "4"})
    strip = lambda s: [ln for ln in s.splitlines() if not ln.startswith("#")]
    assert strip(serial.stdout) == strip(threaded.stdout)


def test_unknown_subcommand_exits_two():
    res = run_cli("frobnicate")
    assert res.returncode == 2
