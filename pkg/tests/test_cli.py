import json
import os

import pytest

from liecheck import cli


def run(args, tmp_path, extra=()):
    argv = ["--out", str(tmp_path), *extra, *args]
    return cli.main(argv)


def read_report(tmp_path, prefix):
    files = [f for f in os.listdir(tmp_path)
             if f.startswith(prefix) and f.endswith(".json")]
    assert len(files) == 1, files
    with open(os.path.join(tmp_path, files[0])) as fh:
        return json.load(fh)


def test_rootsys_info(tmp_path):
    assert run(["rootsys", "info", "--type", "G2"], tmp_path) == 0
    payload = read_report(tmp_path, "rootsys-info")
    assert payload["result"]["coxeter_number"] == 6
    assert payload["result"]["highest_short"] == "1,0"


def test_linkage_check_with_witness(tmp_path):
    code = run(["linkage", "check", "--type", "B6", "--p", "5",
                "--lhs", "w1", "--rhs", "w2"], tmp_path)
    assert code == 0
    payload = read_report(tmp_path, "linkage-check")
    assert payload["result"]["linked"] is True
    assert "witness" in payload["result"]


def test_linkage_lemma_commands(tmp_path):
    assert run(["linkage", "lemma-b", "--n", "6", "--p", "7"], tmp_path) == 0
    assert run(["linkage", "lemma-c", "--n", "4", "--p", "5"], tmp_path) == 0
    assert run(["linkage", "f4g2", "--p", "11"], tmp_path) == 0
    assert run(["linkage", "typec-zero", "--n", "8", "--p", "11", "--j", "4"],
               tmp_path) == 0


def test_search_and_audit_commands(tmp_path):
    assert run(["search", "two-root-sum", "--type", "G2", "--p", "7",
                "--r", "1", "--lambda", "table2:short", "--expect-empty"],
               tmp_path) == 0
    assert run(["search", "remark44", "--type", "A3"], tmp_path) == 0
    assert run(["audit", "inequalities", "--type", "D5"], tmp_path) == 0
    assert run(["search", "fixed-points", "--type", "A2", "--p", "5",
                "--r", "1", "--lambda", "w1"], tmp_path) == 0
    assert run(["search", "e2-forms", "--type", "C3", "--p", "5",
                "--r", "2", "--lambda", "table2:long"], tmp_path) == 0
    payload = read_report(tmp_path, "search-e2-forms")
    forced = payload["result"]["solutions"]["p^c*alpha-dual"]
    assert forced and forced[0]["sigma"] == "2,0,0"


def test_expect_empty_failure_exit_code(tmp_path):
    # rank-3 p=5 has nonzero quotients for the highest root: exit 1
    code = run(["search", "two-root-sum", "--type", "A3", "--p", "5",
                "--r", "1", "--lambda", "table2:long", "--expect-empty"],
               tmp_path)
    assert code == 1


def test_socle_compute(tmp_path):
    assert run(["socle", "compute", "--type", "A2", "--p", "5", "--r", "1",
                "--lambda", "w1", "--msigma", "zero"], tmp_path) == 0
    payload = read_report(tmp_path, "socle-compute")
    assert payload["result"]["multiset"] == [["-2,2", 1], ["3,-2", 1]]
    assert payload["claims"][0]["ok"]


def test_typec_h2_and_figures(tmp_path):
    assert run(["typec", "h2", "--p", "3", "--n", "12", "--j", "6",
                "--provider", "fixture"], tmp_path) == 0
    payload = read_report(tmp_path, "typec-h2")
    assert payload["result"]["lower"] == payload["result"]["upper"] == 1
    assert run(["typec", "figures", "--p", "3", "--n", "12",
                "--provider", "fixture"], tmp_path) == 0
    pngs = [f for f in os.listdir(tmp_path) if f.endswith(".png")]
    assert any("weyl-modules" in f for f in pngs)
    assert any("projective-cover" in f for f in pngs)


def test_typec_table_csv_and_figures(tmp_path):
    code = run(["typec", "table", "--p", "3", "--n-max", "9", "--n-min", "6",
                "--figures"], tmp_path)
    assert code == 0
    csvs = [f for f in os.listdir(tmp_path)
            if f.startswith("typec-table") and f.endswith(".csv")]
    assert len(csvs) == 1
    with open(os.path.join(tmp_path, csvs[0])) as fh:
        rows = [line.strip().split(",") for line in fh]
    assert rows[0] == ["n", "j_list", "undetermined"]
    table = {r[0]: r[1] for r in rows[1:]}
    assert table["6"] == "6" and table["8"] == "none"
    assert any(f.startswith("typec-h2-p3") for f in os.listdir(tmp_path))


def test_cache_replay_and_bypass(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "cache"))
    args = ["rootsys", "info", "--type", "F4"]
    assert run(args, tmp_path / "o1") == 0
    first = read_report(tmp_path / "o1", "rootsys-info")
    assert first["manifest"]["cache_hit"] is False
    assert run(args, tmp_path / "o2") == 0
    second = read_report(tmp_path / "o2", "rootsys-info")
    assert second["manifest"]["cache_hit"] is True
    assert second["result"] == first["result"]
    assert second["manifest"]["result_digest"] == first["manifest"]["result_digest"]
    # --no-cache bypasses replay
    assert run(args, tmp_path / "o3", extra=["--no-cache"]) == 0
    third = read_report(tmp_path / "o3", "rootsys-info")
    assert third["manifest"]["cache_hit"] is False
    # corrupt entries are evicted and recomputed
    cache_dir = tmp_path / "cache"
    for f in os.listdir(cache_dir):
        (cache_dir / f).write_text("{broken")
    assert run(args, tmp_path / "o4") == 0
    fourth = read_report(tmp_path / "o4", "rootsys-info")
    assert fourth["manifest"]["cache_hit"] is False


def test_cache_key_includes_version(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "cache"))
    args = ["rootsys", "info", "--type", "G2"]
    assert run(args, tmp_path / "a") == 0
    monkeypatch.setattr(cli, "__version__", "0.0.0-test")
    assert run(args, tmp_path / "b") == 0
    payload = read_report(tmp_path / "b", "rootsys-info")
    assert payload["manifest"]["cache_hit"] is False


def test_usage_errors(tmp_path):
    assert cli.main(["bogus"]) == 2
    assert run(["linkage", "check", "--type", "B6", "--p", "5",
                "--lhs", "1,2", "--rhs", "w2"], tmp_path) == 2  # bad length
    assert run(["rootsys", "info", "--type", "Q9"], tmp_path) == 2
    assert run(["search", "two-root-sum", "--type", "A2", "--p", "5",
                "--lambda", "w9"], tmp_path) == 2


def test_out_of_regime_warning(tmp_path, capsys):
    assert run(["search", "fixed-points", "--type", "G2", "--p", "5",
                "--r", "1", "--lambda", "w1"], tmp_path) == 0
    err = capsys.readouterr().err
    assert "warning" in err and "regime" in err


def test_verify_all_quick(tmp_path):
    assert run(["verify-all", "--quick"], tmp_path) == 0
    payload = read_report(tmp_path, "verify-all")
    assert payload["result"]["failed"] == 0
    assert payload["result"]["checks"] >= 8


def test_parallel_table_matches_serial(tmp_path):
    assert run(["typec", "table", "--p", "5", "--n-max", "12", "--n-min", "10"],
               tmp_path / "serial") == 0
    assert run(["typec", "table", "--p", "5", "--n-max", "12", "--n-min", "10"],
               tmp_path / "par", extra=["--jobs", "2", "--no-cache"]) == 0
    a = read_report(tmp_path / "serial", "typec-table")
    b = read_report(tmp_path / "par", "typec-table")
    assert a["result"] == b["result"]
    assert a["manifest"]["result_digest"] == b["manifest"]["result_digest"]
