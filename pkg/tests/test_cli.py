import json
import re
import subprocess
import sys

import pytest

from rsverify.cli import main

KEYS = ["check", "params", "status", "detail", "residual", "duration_ms"]


def run_json(capsys, *args):
    code = main(["verify", *args, "--report", "json"])
    return code, json.loads(capsys.readouterr().out)


def strip_durations(reports):
    return [{k: v for k, v in r.items() if k != "duration_ms"} for r in reports]


def test_identity_order_40_passes(capsys):
    code = main(["verify", "identity", "--order", "40"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[PASS] main_identity (order=40)" in out


@pytest.mark.parametrize("bad", [["gauss", "--prime", "4"], ["gauss", "--prime", "9"],
                                 ["gauss", "--prime", "2"], ["identity", "--order", "-1"],
                                 ["identity", "--bogus"], ["nonsense"]])
def test_usage_errors_exit_2(bad, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", *bad])
    assert exc.value.code == 2


def test_json_schema(capsys):
    code, reports = run_json(capsys, "matrix")
    assert code == 0
    assert isinstance(reports, list) and reports
    for r in reports:
        assert list(r) == KEYS
        assert r["status"] in ("pass", "fail")
        assert isinstance(r["params"], dict) and isinstance(r["detail"], str)
        assert r["residual"] is None or isinstance(r["residual"], float)


def test_deterministic_given_seed(capsys):
    _, first = run_json(capsys, "weil", "--prime", "3", "--seed", "7")
    _, second = run_json(capsys, "weil", "--prime", "3", "--seed", "7")
    assert strip_durations(first) == strip_durations(second)
    assert json.dumps(strip_durations(first)) == json.dumps(strip_durations(second))


def test_reports_sorted_canonically(capsys):
    _, reports = run_json(capsys, "hilbert", "--prime", "11", "--prime", "3")
    keys = [(r["check"], r["params"]["p"]) for r in reports]
    assert keys == sorted(keys)


def test_text_and_json_agree(capsys):
    _, reports = run_json(capsys, "gauss", "--prime", "5", "--mmax", "3")
    main(["verify", "gauss", "--prime", "5", "--mmax", "3"])
    text = capsys.readouterr().out
    lines = [ln for ln in text.splitlines() if ln.startswith("[")]
    assert len(lines) == len(reports)
    for ln, r in zip(lines, reports):
        m = re.match(r"\[(PASS|FAIL)\] (\S+)", ln)
        assert m.group(1).lower() == r["status"] and m.group(2) == r["check"]
    assert text.rstrip().endswith(f"{len(reports)}/{len(reports)} checks passed")


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "matrix", "--report", "json", "--out", str(out)]) == 0
    assert "report written" in capsys.readouterr().out
    assert json.loads(out.read_text(encoding="utf-8"))[0]["check"] == "heisenberg_group"


def test_tolerance_flag_is_honoured(capsys):
    # an absurdly tight tolerance makes the floating-point checks fail -> exit 1
    code, reports = run_json(capsys, "gauss", "--prime", "3", "--mmax", "2", "--tolerance", "1e-30")
    assert code == 1
    assert any(r["status"] == "fail" for r in reports)


def test_module_entry_point_all_json():
    proc = subprocess.run([sys.executable, "-m", "rsverify", "verify", "all", "--report", "json"],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0, proc.stderr
    reports = json.loads(proc.stdout)
    assert reports and all(r["status"] == "pass" for r in reports)
    names = {r["check"] for r in reports}
    assert {"main_identity", "matrix_identity", "unit_integral.value", "weil.conjugation",
            "hilbert.oracle", "algebra.ring_laws"} <= names
