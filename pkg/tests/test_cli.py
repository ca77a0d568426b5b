import csv
import json
import re

import pytest

import cli
from verification import CheckResult


def _run(capsys, *argv):
    status = cli.main(list(argv))
    out = capsys.readouterr().out
    return status, out


def _run_json(capsys, *argv):
    status, out = _run(capsys, *argv)
    return status, json.loads(out)


def test_classify_sl2r(capsys):
    status, payload = _run_json(capsys, "classify", "--group", "sl2r", "--t", "0.5")
    assert status == 0
    assert payload["regularity"] == "Regular"
    assert payload["type"] == "Elliptic"
    assert payload["canonical_t"] == pytest.approx(0.5)
    assert payload["spherical"] is False
    assert payload["tolerances"]["residual_tol"] == 1e-10


def test_invariants_e2(capsys):
    status, payload = _run_json(capsys, "invariants", "--group", "e2")
    assert status == 0
    assert payload["group"] == "e2"
    assert payload["triple"]["b"] == pytest.approx([0.0, 0.5])
    assert payload["triple"]["c"] == pytest.approx([0.0, -0.5])
    assert payload["sigma"] == pytest.approx([0.0, 2.25])
    assert payload["spherical"] is False
    assert max(payload["residuals"]) < 1e-10


def test_realize_writes_csv(capsys, tmp_path):
    target = tmp_path / "orbit.csv"
    status, payload = _run_json(
        capsys, "realize", "--group", "sl2r", "--t", "0.5", "--samples", "8", "--csv", str(target)
    )
    assert status == 0
    assert payload["csv_rows"] == 8
    assert payload["mu"] == pytest.approx(17.0)
    with target.open(encoding="utf-8") as handle:
        assert len(list(csv.reader(handle))) == 9


def test_realize_is_deterministic(capsys):
    argv = ("realize", "--group", "e2", "--samples", "6", "--seed", "3", "--points")
    first = _run(capsys, *argv)
    second = _run(capsys, *argv)
    assert first == second
    payload = json.loads(first[1])
    assert payload["quadric_fit"]["fitted"] == "im"
    assert len(payload["points"]) == 6


def test_samples_default_comes_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("CRGEOM_SAMPLES", "4")
    status, payload = _run_json(capsys, "realize", "--group", "heis")
    assert status == 0
    assert payload["samples"] == 4
    assert "points" not in payload

    monkeypatch.setenv("CRGEOM_POINTS", "on")
    status, payload = _run_json(capsys, "realize", "--group", "heis")
    assert len(payload["points"]) == 4


def test_custom_algebra_file(capsys, tmp_path):
    path = tmp_path / "heis.json"
    path.write_text(json.dumps({"brackets": [{"i": 0, "j": 1, "k": 2, "v": 1.0}]}), encoding="utf-8")
    status, payload = _run_json(capsys, "classify", "--algebra-file", str(path), "--line", "1", "0", "0", "1", "0", "0")
    assert status == 0
    assert payload["group"] is None
    assert payload["type"] is None
    assert payload["spherical"] is True


@pytest.mark.parametrize(
    "argv, code",
    [
        (("classify", "--group", "sl2r"), "invalid_request"),
        (("classify", "--group", "so3", "--t", "1"), "invalid_request"),
        (("classify", "--group", "heis", "--algebra-file", "x.json"), "invalid_request"),
        (("classify", "--group", "sl2r", "--t", "0"), "singular_parameter"),
        (("classify", "--group", "heis", "--line", "1", "0", "0", "0", "0", "1"), "not_regular"),
        (("realize", "--group", "heis", "--samples", "0"), "invalid_request"),
        (("invariants", "--algebra-file", "missing.json", "--line", "1", "0", "0", "1", "0", "0"), "format_error"),
        (("classify",), "invalid_request"),
    ],
)
def test_invalid_requests_exit_2(capsys, argv, code):
    status, payload = _run_json(capsys, *argv)
    assert status == 2
    assert payload["code"] == code
    assert payload["error"] == payload["message"]


def test_text_format(capsys):
    status, out = _run(capsys, "classify", "--group", "su2", "--t", "1", "--format", "text")
    assert status == 0
    assert "type: Elliptic" in out
    assert "spherical: True" in out


def test_verify_exit_codes(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_battery", lambda settings: [CheckResult("ok", True, 0.0, 1e-12)])
    status, payload = _run_json(capsys, "verify")
    assert status == 0
    assert payload["passed"] == 1
    assert payload["seed"] == 42

    monkeypatch.setattr(
        cli,
        "run_battery",
        lambda settings: [CheckResult("ok", True, 0.0, 1e-12), CheckResult("bad", False, 1.0, 1e-12, "drift")],
    )
    status, payload = _run_json(capsys, "verify")
    assert status == 1
    assert payload["failed"] == 1


def test_verify_text_table(capsys, monkeypatch):
    monkeypatch.setattr(cli, "run_battery", lambda settings: [CheckResult("ok", True, 0.0, 1e-12)])
    status, out = _run(capsys, "verify", "--format", "text")
    assert status == 0
    assert out.strip().endswith("1/1 checks passed")


def test_unwritable_csv_path_is_a_diagnostic(capsys, tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    status, payload = _run_json(
        capsys, "realize", "--group", "e2", "--samples", "3", "--csv", str(blocker / "orbit.csv")
    )
    assert status == 2
    assert payload["code"] == "format_error"
    assert payload["details"]["path"] == str(blocker / "orbit.csv")


def test_file_algebra_does_not_borrow_a_model_from_its_name(capsys, algebra_file, heis):
    path = algebra_file(heis, "e2.json")
    status, payload = _run_json(
        capsys,
        "realize",
        "--algebra-file",
        str(path),
        "--line",
        *("1", "0", "0", "1", "0", "0"),
        "--samples",
        "6",
    )
    assert status == 0
    assert payload["model"] is None
    assert payload["mu"] is None
    assert payload["max_residual"] < 1e-10
    assert "quadric_fit" not in payload


@pytest.mark.parametrize(
    "argv",
    [
        ("invariants", "--group", "e2"),
        ("invariants", "--group", "heis"),
        ("classify", "--group", "sl2r", "--t", "0.5"),
    ],
)
def test_reports_have_no_negative_zero(capsys, argv):
    status, out = _run(capsys, *argv)
    assert status == 0
    assert re.search(r"-0\.0(?![0-9])", out) is None
