"""Command line behavior: output shapes, exit codes, and configuration."""

from __future__ import annotations

import json

import pytest

from noncyclic import build, build_graph, export_dot, parse_spec
from noncyclic import cli


def run(capsys, *args: str):
    code = cli.main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# -- info and catalog --------------------------------------------------------------


def test_info_prints_a_summary(capsys):
    code, out, _ = run(capsys, "info", "Q8")
    assert code == 0
    assert "Q8: order 8, exponent 4" in out
    assert "m_4=3" in out
    assert "cyclizer size: 2" in out


def test_info_json_fields(capsys):
    code, out, _ = run(capsys, "info", "Q8", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["spec"] == "Q8"
    assert payload["nilpotent_kind"] == "sylow2_quaternion"
    assert payload["cyclizer_size"] == 2
    assert [4, 3] in payload["class_counts"]
    assert payload["graph_vertices"] == 6


def test_catalog_lists_every_small_spec(capsys):
    code, out, _ = run(capsys, "catalog", "--max-order", "12", "--json")
    entries = json.loads(out)
    assert code == 0
    assert len(entries) == 30
    orders = [e["order"] for e in entries]
    assert orders == sorted(orders)
    assert {"spec": "Q8", "order": 8} in entries


def test_bad_spec_is_a_usage_error(capsys):
    code, _, err = run(capsys, "info", "D13")
    assert code == 2
    assert err


# -- graph export ------------------------------------------------------------------


def test_graph_dot_matches_the_library_renderer(capsys):
    code, out, _ = run(capsys, "graph", "Z2 x Z2", "--dot", "-")
    graph = build_graph(build(parse_spec("Z2 x Z2")))
    assert code == 0
    assert out == export_dot(graph)


def test_graph_json_to_file(tmp_path, capsys):
    target = tmp_path / "graph.json"
    code, _, _ = run(capsys, "graph", "Z4 x Z2", "--json", str(target))
    payload = json.loads(target.read_text())
    assert code == 0
    assert payload["order"] == 8
    assert len(payload["vertices"]) == 7
    assert len(payload["edges"]) == 15


# -- cyclizer and hamiltonian ------------------------------------------------------


def test_cyclizer_check_agrees(capsys):
    code, out, _ = run(capsys, "cyclizer", "Q8", "--check", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["size"] == 2
    assert payload["elements"] == ["1", "a^2"]
    assert payload["agrees_with_brute_force"] is True


def test_cyclizer_brute_force_method(capsys):
    code, out, _ = run(capsys, "cyclizer", "Dih3", "--method", "brute-force", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["method"] == "brute-force"
    assert payload["size"] == 1


def test_hamiltonian_emits_a_verified_cycle(capsys):
    code, out, _ = run(capsys, "hamiltonian", "Z4 x Z2", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["verified"] is True
    assert payload["method"] == "constructive"
    assert len(payload["cycle"]) == 7
    assert len(set(payload["cycle"])) == 7


def test_hamiltonian_rejects_cyclic_groups(capsys):
    code, _, err = run(capsys, "hamiltonian", "Z12")
    assert code == 2
    assert "cyclic" in err


def test_backtracking_budget_from_the_environment(monkeypatch, capsys):
    monkeypatch.setenv("NONCYCLIC_BUDGET", "5")
    code, _, err = run(
        capsys, "hamiltonian", "Z2 x Z2 x Z7", "--builder", "backtracking"
    )
    assert code == 3
    assert "budget exhausted" in err


def test_budget_flag_beats_the_environment(monkeypatch, capsys):
    monkeypatch.setenv("NONCYCLIC_BUDGET", "5")
    code, out, _ = run(
        capsys,
        "hamiltonian", "Z2 x Z2 x Z7",
        "--builder", "backtracking",
        "--budget", "1000000",
        "--json",
    )
    payload = json.loads(out)
    assert code == 0
    assert payload["method"] == "backtracking"
    assert payload["verified"] is True


# -- codes -------------------------------------------------------------------------


def test_codes_report_with_oracle(capsys):
    code, out, _ = run(capsys, "codes", "D8", "--oracle", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["perfect"]["status"] == "found"
    assert payload["perfect"]["vertices"] == ["b"]
    assert payload["perfect"]["agrees"] is True
    assert payload["total"]["status"] == "proven-absent"
    assert payload["total"]["agrees"] is True


def test_codes_reject_cyclic_groups(capsys):
    code, _, err = run(capsys, "codes", "Z9")
    assert code == 2
    assert err


# -- configuration -----------------------------------------------------------------


def test_config_file_sets_defaults(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_order": 8}))
    code, out, _ = run(capsys, "catalog", "--config", str(cfg), "--json")
    entries = json.loads(out)
    assert code == 0
    assert max(e["order"] for e in entries) == 8


def test_flags_beat_the_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_order": 8}))
    code, out, _ = run(
        capsys, "catalog", "--config", str(cfg), "--max-order", "6", "--json"
    )
    entries = json.loads(out)
    assert code == 0
    assert max(e["order"] for e in entries) == 6


def test_config_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_order": 8, "verbosity": 3}))
    code, _, err = run(capsys, "catalog", "--config", str(cfg))
    assert code == 2
    assert "verbosity" in err


# -- the verify suites -------------------------------------------------------------


def test_verify_counts_passes_and_reports(capsys):
    code, out, _ = run(capsys, "verify", "counts", "--max-order", "16", "--json")
    payload = json.loads(out)
    assert code == 0
    assert payload["schema"] == "noncyclic-verify-report/1"
    assert payload["summary"]["failed"] == 0
    assert payload["summary"]["budget_exhausted"] == 0
    assert payload["summary"]["groups"] == 51
    specs = [g["spec"] for g in payload["groups"]]
    assert specs == sorted(specs)


def test_verify_human_output_summarizes(capsys):
    code, out, _ = run(capsys, "verify", "cyclizer", "--max-order", "16")
    assert code == 0
    assert "checks" in out
    assert "0 failed" in out


def test_verify_rejects_unknown_suites(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["verify", "everything"])
    assert exc.value.code == 2


def test_verify_runs_are_byte_identical(tmp_path, capsys):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    for target in (first, second):
        code = cli.main(
            ["verify", "all", "--seed", "7", "--max-order", "24", "--json", str(target)]
        )
        capsys.readouterr()
        assert code == 0
    assert first.read_bytes() == second.read_bytes()


def test_tiny_bound_is_a_usage_error(capsys):
    code, _, err = run(capsys, "verify", "counts", "--max-order", "3")
    assert code == 2
    assert err
