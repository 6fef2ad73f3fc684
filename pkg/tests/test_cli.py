import io
import json
import subprocess
import sys

import pytest

from galscaffold.cli import build_parser, config_from_args, main, run

RUN = ["--p", "3", "--kind", "cyclic", "--beta1", "[[-1, 1]]", "--beta2", "[[-7, 1]]"]


def machine(argv):
    cfg = config_from_args(build_parser().parse_args(argv + ["--machine"]))
    buf = io.StringIO()
    status = run(cfg, buf)
    return status, json.loads(buf.getvalue()), buf.getvalue()


def test_analyze_running():
    status, rep, _ = machine(["analyze"] + RUN)
    assert status == 0 and rep["b2"] == 19 and rep["u2_star"] == 7
    assert rep["mu"] == [[-2, 1]] and rep["eps"] == []


def test_analyze_hyp_false():
    status, rep, _ = machine(["analyze", "--p", "3", "--kind", "cyclic", "--beta1", "[[-1,1]]", "--beta2", "[[-2,1]]"])
    assert status == 0 and rep["hyp_2_3"] is False


def test_input_file(tmp_path):
    f = tmp_path / "ext.json"
    f.write_text(json.dumps({"p": 3, "kind": "cyclic", "beta1": [[-1, 1]], "beta2": [[-7, 1]]}))
    status, rep, _ = machine(["order", "--input", str(f)])
    assert status == 0 and rep["w"] == [0, 0, 0, 2, 2, 2, 4, 4, 5] and rep["generator_ok"]


def test_order_text(capsys):
    assert main(["order"] + RUN) == 0
    assert "FREE, r(b)=1, generator valuation 1" in capsys.readouterr().out


def test_scaffold_and_determinism():
    s1, rep, raw1 = machine(["scaffold"] + RUN + ["--trials", "10"])
    s2, _, raw2 = machine(["scaffold"] + RUN + ["--trials", "10"])
    assert s1 == s2 == 0 and raw1 == raw2 and rep["verdict"]


def test_scaffold_failed_check_exit_1():
    status, rep, _ = machine(["scaffold", "--p", "2", "--kind", "cyclic", "--beta1", "[[-3,1]]", "--beta2", "[[-5,1]]"])
    assert status == 1 and rep["c4"]["route"] == "below"


def test_survey_and_identities():
    status, rep, _ = machine(["survey", "--p", "3", "--b1-max", "5", "--m-max", "10"])
    assert status == 0 and rep["disagreements"] == 0
    status, rep, _ = machine(["identities"])
    assert status == 0 and rep["nonzero"] == 0


@pytest.mark.parametrize("argv", [
    ["analyze", "--p", "3", "--kind", "cyclic", "--beta1", "[[2,1]]", "--beta2", "[[-7,1]]"],
    ["analyze", "--p", "3", "--kind", "cyclic"],
    ["analyze", "--p", "3", "--kind", "cyclic", "--beta1", "oops", "--beta2", "[[-7,1]]"],
    ["analyze", "--input", "/nonexistent/file.json"],
])
def test_input_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert capsys.readouterr().err.strip()


def test_not_fully_ramified_named_on_stderr(capsys):
    main(["analyze", "--p", "3", "--kind", "cyclic", "--beta1", "[[2,1]]", "--beta2", "[[-7,1]]"])
    assert capsys.readouterr().err.startswith("NotFullyRamified")


def test_console_script_module():
    out = subprocess.run([sys.executable, "-m", "galscaffold.cli", "analyze"] + RUN,
                         capture_output=True, text=True, check=True)
    assert "b2: 19" in out.stdout
