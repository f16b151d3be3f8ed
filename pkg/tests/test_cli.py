import io
import json
import subprocess
import sys

import pytest

from wsprimary.cli import main, run
from wsprimary.config import build_config, parse_config
from wsprimary.errors import AuditFailure, ParseError, UnresolvedReference

CONFIG = {
    "rings": {"R": {"zn": 36}, "R12": {"zn": 12}},
    "modules": {"M": {"regular": "R"}, "M12": {"regular": "R12"}},
    "submodules": {"N": {"module": "M", "gens": [6]}, "N12": {"module": "M12", "gens": [6]}},
    "multsets": {"S": {"ring": "R", "gens": [3]}, "U": {"ring": "R12", "gens": [1]}},
}


@pytest.fixture
def cfg_path(tmp_path):
    p = tmp_path / "wb.json"
    p.write_text(json.dumps(CONFIG))
    return str(p)


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    report, code = run(argv, stdout=out, stderr=err)
    return report, code, out.getvalue(), err.getvalue()


def test_parse_config_resolves_multset(cfg_path):
    cfg = parse_config(cfg_path)
    assert cfg.multsets["S"].members == (3, 9, 27)
    assert build_config({}).rings == {}


def test_config_errors(tmp_path):
    with pytest.raises(UnresolvedReference):
        build_config({"modules": {"M": {"regular": "nope"}}})
    p = tmp_path / "bad.json"
    p.write_text('{"rings": {\n  "R": {"zn" 4}}}')
    with pytest.raises(ParseError) as e:
        parse_config(p)
    assert ":2:" in str(e.value)
    with pytest.raises(AuditFailure):
        build_config({"rings": {"R": {"zn": 12}},
                      "multsets": {"S": {"ring": "R", "gens": [2], "closure": False}}})
    with pytest.raises(AuditFailure):
        build_config({"caps": {"ring_order": 0}})


def test_check_exit_codes(cfg_path):
    report, code, out, _ = _run(["check", "kind=weakly-s-primary", "module=M", "submodule=N",
                                 "multset=S", "--config", cfg_path])
    assert code == 0 and "witness s = 3" in out
    assert report["results"][0]["witness"] == "3"
    report, code, out, _ = _run(["check", "kind=weakly-primary", "module=M12", "submodule=N12",
                                 "--config", cfg_path])
    assert code == 1 and "a=2, m=3" in out
    assert report["results"][0]["counterexample"] == {"a": "2", "m": "3"}


@pytest.mark.parametrize("argv", [
    ["check", "kind=bogus", "module=M", "submodule=N"],
    ["check", "kind=weakly-s-primary", "module=M", "submodule=N"],
    ["check", "module=M", "submodule=N"],
    ["check", "kind=primary", "module=Missing", "submodule=N"],
    ["verify", "claims=NOPE"],
    ["describe", "target"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(cfg_path, argv):
    _, code, _, err = _run(argv + ["--config", cfg_path])
    assert code == 2


def test_missing_config_file_exit_2(tmp_path):
    _, code, _, err = _run(["describe", "target=R", "--config", str(tmp_path / "none.json")])
    assert code == 2 and "ParseError" in err


def test_not_disjoint_is_false_not_error():
    report, code, _, _ = _run(["check", "kind=weakly-s-primary", "module=Z12",
                               "submodule=gens:4", "multset=gens:4"])
    assert code == 1 and report["results"][0]["error"] == "NotDisjoint"


def test_witnesses_and_fixture():
    report, code, out, _ = _run(["witnesses", "fixture=INT-CE-Z72", "part=NK", "--format", "json"])
    assert code == 0
    assert json.loads(out)["results"][0]["witnesses"] == ["9", "27"]


def test_enumerate_and_describe(cfg_path):
    report, code, _, _ = _run(["enumerate", "module=M12", "--config", cfg_path])
    assert code == 0 and report["results"][0]["count"] == 6
    report, code, _, _ = _run(["describe", "target=M", "--config", cfg_path])
    assert code == 0 and report["results"][0]["faithful"] is True
    report, code, _, _ = _run(["describe", "target=S", "--config", cfg_path])
    assert report["results"][0]["members"] == "{3,9,27}"


def test_report_file_and_keys(tmp_path):
    path = tmp_path / "r.json"
    report, code, _, _ = _run(["verify", "claims=E1-4,INT-CE-Z72", "--report", str(path)])
    assert code == 0
    saved = json.loads(path.read_text())
    assert {"version", "params_fingerprint", "results", "claims"} <= set(saved)
    assert [c["claim_id"] for c in saved["claims"]] == ["E1-4", "INT-CE-Z72"]


def test_verify_failing_claim_exits_1():
    report, code, out, _ = _run(["verify", "--claims", "F-2", "--max-ring-order", "6"])
    assert code == 1 and "FAIL" in out


def test_human_output_is_covered_by_json(cfg_path):
    argv = ["check", "kind=weakly-s-primary", "module=M", "submodule=N", "multset=S",
            "--config", cfg_path]
    report, _, human, _ = _run(argv)
    blob = json.dumps(report)
    for token in ("weakly-s-primary", "3", "{0,6,12,18,24,30}", "{3,9,27}"):
        assert token in human and token in blob


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "wsprimary", "check", "kind=primary",
                        "module=Z9", "submodule=gens:3"], capture_output=True, text=True)
    assert r.returncode == 0 and "holds" in r.stdout
    assert main(["describe", "target=Z4"]) == 0
