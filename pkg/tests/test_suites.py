"""Suite-runner and CLI contract tests: report schema, determinism,
golden record/compare cycle, exit codes, and output formats."""

import json

import pytest

from artifact.cli import main
from artifact.scalar import Params, S
from artifact.suites import SUITE_NAMES, run_suite

REPORT_KEYS = {"suite", "seed", "params", "checks", "duration_ms"}
CHECK_KEYS = {"name", "status", "detail"}


def _without_duration(report):
    doc = report.to_json()
    doc.pop("duration_ms")
    return doc


def test_report_schema_round_trips():
    report = run_suite("gamma", seed=1)
    doc = report.to_json()
    assert set(doc) == REPORT_KEYS
    assert doc["suite"] == "gamma"
    assert doc["seed"] == 1
    assert set(doc["params"]) == {"t1", "t2", "a", "q", "seed"}
    assert isinstance(doc["duration_ms"], int)
    for check in doc["checks"]:
        assert set(check) == CHECK_KEYS
        assert check["status"] in ("pass", "fail")
    # Serialization round-trips through plain JSON without loss.
    assert json.loads(json.dumps(doc)) == doc


def test_checks_sorted_by_name():
    report = run_suite("rmatrix", seed=1, degree_cap=1)
    names = [check.name for check in report.checks]
    assert names == sorted(names)


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite("nosuch")


def test_heisenberg_seed1_passes_with_partition_sized_blocks():
    report = run_suite("heisenberg", seed=1)
    assert report.passed
    by_name = {check.name: check for check in report.checks}
    # p(0..6) = 1, 1, 2, 3, 5, 7, 11 basis vectors per degree.
    assert by_name["commutation_rank1"].detail["block_dims"] == [1, 1, 2, 3, 5, 7, 11]


def test_yangbaxter_seed3_cap3_passes():
    report = run_suite("yangbaxter", seed=3, degree_cap=3)
    assert report.passed
    assert report.suite == "yangbaxter"


def test_all_aggregate_is_deterministic():
    first = run_suite("all", seed=1, degree_cap=2)
    second = run_suite("all", seed=1, degree_cap=2)
    assert first.passed
    assert _without_duration(first) == _without_duration(second)
    prefixes = {check.name.split(".", 1)[0] for check in first.checks}
    assert prefixes == set(SUITE_NAMES)
    names = [check.name for check in first.checks]
    assert names == sorted(names)


def test_degree_cap_clamped_to_global_maximum():
    report = run_suite("gamma", seed=1, degree_cap=10 ** 6)
    assert report.passed


def test_explicit_params_echoed_in_report():
    params = Params(t1=S("-3/2"), t2=S("7/3"), a=(S("1/5"), S("19/4")), q=S("5/9"))
    report = run_suite("quantum", seed=11, params=params)
    assert report.passed
    doc = report.to_json()
    assert doc["seed"] == 11
    assert doc["params"]["t1"] == "-3/2"
    assert doc["params"]["a"] == ["1/5", "19/4"]


def test_thread_override_keeps_report_content(monkeypatch):
    baseline = run_suite("quantum", seed=1)
    monkeypatch.setenv("ARTIFACT_THREADS", "4")
    threaded = run_suite("quantum", seed=1)
    assert _without_duration(baseline) == _without_duration(threaded)


def test_golden_record_then_compare(tmp_path):
    golden = tmp_path / "golden"
    recorded = run_suite(
        "rmatrix", seed=1, degree_cap=2, golden_dir=str(golden), record_golden=True
    )
    assert recorded.passed
    assert sorted(path.name for path in golden.iterdir()) == [
        "det_degree_1.json",
        "det_degree_2.json",
    ]
    compared = run_suite("rmatrix", seed=1, degree_cap=2, golden_dir=str(golden))
    assert compared.passed


def test_golden_mismatch_detected(tmp_path):
    golden = tmp_path / "golden"
    run_suite("rmatrix", seed=1, degree_cap=1, golden_dir=str(golden), record_golden=True)
    path = golden / "det_degree_1.json"
    doc = json.loads(path.read_text())
    doc["num"] = [[2, 2]]
    path.write_text(json.dumps(doc))
    report = run_suite("rmatrix", seed=1, degree_cap=1, golden_dir=str(golden))
    by_name = {check.name: check for check in report.checks}
    assert not by_name["determinant_golden_match"].passed
    assert not report.passed


def test_golden_missing_file_detected(tmp_path):
    report = run_suite("rmatrix", seed=1, degree_cap=1, golden_dir=str(tmp_path))
    by_name = {check.name: check for check in report.checks}
    assert not by_name["determinant_golden_match"].passed
    assert "missing" in by_name["determinant_golden_match"].detail


# --- CLI ---


def test_cli_json_output_and_exit_zero(capsys):
    code = main(["--suite", "gamma", "--seed", "1"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) == REPORT_KEYS
    assert doc["suite"] == "gamma"


def test_cli_unknown_suite_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["--suite", "nosuch"])
    assert exc.value.code == 2


def test_cli_bad_rational_exits_two():
    with pytest.raises(SystemExit) as exc:
        main(["--suite", "gamma", "--q", "1.5x"])
    assert exc.value.code == 2


def test_cli_record_requires_golden_dir():
    with pytest.raises(SystemExit) as exc:
        main(["--suite", "rmatrix", "--record"])
    assert exc.value.code == 2


def test_cli_json_and_table_mutually_exclusive():
    with pytest.raises(SystemExit) as exc:
        main(["--suite", "gamma", "--json", "--table"])
    assert exc.value.code == 2


def test_cli_invalid_params_file_exits_two(tmp_path, capsys):
    path = tmp_path / "params.json"
    path.write_text(json.dumps({"t1": "1", "t2": "2", "a": ["0", "1"], "q": "1/2"}))
    code = main(["--suite", "gamma", "--params-file", str(path)])
    assert code == 2
    err = capsys.readouterr().err
    assert "framing weights collide" in err


def test_cli_malformed_params_file_exits_two(tmp_path, capsys):
    path = tmp_path / "params.json"
    path.write_text(json.dumps({"t1": "1"}))
    code = main(["--suite", "gamma", "--params-file", str(path)])
    assert code == 2
    assert "missing keys" in capsys.readouterr().err


def test_cli_params_file_used(tmp_path, capsys):
    path = tmp_path / "params.json"
    path.write_text(
        json.dumps({"t1": "-3/2", "t2": "7/3", "a": ["1/5", "19/4"], "q": "5/9"})
    )
    code = main(["--suite", "quantum", "--params-file", str(path)])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["params"]["t1"] == "-3/2"
    assert doc["params"]["q"] == "5/9"


def test_cli_check_failure_exits_one(tmp_path, capsys):
    code = main(
        [
            "--suite",
            "rmatrix",
            "--degree-cap",
            "1",
            "--golden",
            str(tmp_path / "empty"),
        ]
    )
    assert code == 1
    doc = json.loads(capsys.readouterr().out)
    statuses = {check["name"]: check["status"] for check in doc["checks"]}
    assert statuses["determinant_golden_match"] == "fail"


def test_cli_table_format(capsys):
    code = main(["--suite", "gamma", "--table"])
    assert code == 0
    out = capsys.readouterr().out
    assert "suite: gamma" in out
    assert "bernoulli_conventions" in out
    assert "0 failed" in out


def test_cli_table_shows_failure_detail(tmp_path, capsys):
    code = main(
        [
            "--suite",
            "rmatrix",
            "--degree-cap",
            "1",
            "--golden",
            str(tmp_path / "empty"),
            "--table",
        ]
    )
    assert code == 1
    out = capsys.readouterr().out
    assert "FAIL determinant_golden_match" in out
    assert "1 failed" in out


def test_cli_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["--suite", "gamma", "--output", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    doc = json.loads(target.read_text())
    assert doc["suite"] == "gamma"


def test_cli_golden_record_and_compare_cycle(tmp_path, capsys):
    golden = tmp_path / "golden"
    code = main(
        [
            "--suite",
            "rmatrix",
            "--degree-cap",
            "1",
            "--golden",
            str(golden),
            "--record",
        ]
    )
    assert code == 0
    capsys.readouterr()
    code = main(
        ["--suite", "rmatrix", "--degree-cap", "1", "--golden", str(golden)]
    )
    assert code == 0
