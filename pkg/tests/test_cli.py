import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from meridian_re.cli import JSON_SCHEMA, emit, run


def invoke(*argv):
    out = io.BytesIO()
    err = io.StringIO()
    status = run(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    status, out, err = invoke(*argv)
    assert status == 0, err
    doc = json.loads(out)
    jsonschema.validate(doc, JSON_SCHEMA)
    return doc


@pytest.mark.parametrize(
    "argv",
    [
        ["critical-angle"],
        ["solve-scalene", "--a", "1.7"],
        ["solve-scalene", "--cos-a", "-0.125"],
        ["solve-isosceles", "--theta", "0.7"],
        ["solve-isosceles", "--theta", "60", "--degrees"],
        ["solve-isosceles", "--theta", "0.7", "--model", "repulsive"],
        ["enumerate", "--a", "0.5235988"],
        ["family-table", "--n", "5"],
        ["verify", "--theta1", "0", "--theta2", "1", "--theta3", "2", "--omega-sq", "1"],
        ["regression"],
        ["trace-contour", "--resolution", "64"],
        ["critical-angle", "--metadata"],
    ],
)
def test_json_outputs_validate(argv):
    doc = invoke_json(*argv)
    assert doc["schema_version"] == 1
    assert doc["command"] == argv[0]


def test_critical_angle_values():
    rec = invoke_json("critical-angle")["records"][0]
    assert rec["cos_ac"] == pytest.approx(-0.23931, abs=5e-6)
    assert rec["ac"] == pytest.approx(1.8124, abs=1e-4)
    assert rec["xc"] == pytest.approx(0.90622, abs=1e-5)


def test_enumerate_six_at_pi_over_six():
    doc = invoke_json("enumerate", "--a", "0.5235988")
    assert len(doc["records"]) == 6
    assert doc["input"]["a"] == 0.5235988


def test_degrees_flag():
    deg = invoke_json("solve-isosceles", "--theta", "45", "--degrees")["records"][0]
    assert deg["omega_sq"] == pytest.approx(6.0, rel=1e-12)


def test_charged_model():
    doc = invoke_json(
        "solve-isosceles", "--theta", "1.0", "--model", "charged", "--charge", "1", "--charge", "1", "--charge", "1"
    )
    rep = invoke_json("solve-isosceles", "--theta", "1.0", "--model", "repulsive")
    assert doc["records"] == rep["records"]


@pytest.mark.parametrize(
    "argv, status, code",
    [
        (["solve-isosceles", "--theta", "1.5707963"], 3, "SINGULAR"),
        (["solve-isosceles", "--theta", "4.0"], 2, "PRECONDITION"),
        (["solve-isosceles"], 2, "PRECONDITION"),
        (["solve-scalene", "--a", "1.0"], 4, "RANGE"),
        (["solve-scalene", "--a", "2.0"], 4, "RANGE"),
        (["solve-scalene", "--a", "1.7", "--cos-a", "-0.1"], 2, "PRECONDITION"),
        (["critical-angle", "--model", "charged"], 2, "PRECONDITION"),
        (["critical-angle", "--model", "charged", "--charge", "1"], 2, "PRECONDITION"),
        (["critical-angle", "--charge", "1"], 2, "PRECONDITION"),
        (["verify", "--theta1", "0", "--theta2", "0", "--theta3", "1", "--omega-sq", "1"], 3, "SINGULAR"),
        (["nonsense"], 2, "PRECONDITION"),
        (["critical-angle", "--tol", "-1"], 2, "PRECONDITION"),
        (["trace-contour", "--resolution", "3"], 2, "PRECONDITION"),
        (["family-table", "--model", "repulsive"], 2, "PRECONDITION"),
    ],
)
def test_error_codes(argv, status, code):
    got, out, err = invoke(*argv)
    assert got == status
    assert out == b""
    lines = err.strip().splitlines()
    assert len(lines) == 1
    assert lines[0].startswith(f"error: {code}: ")


def test_io_failure(tmp_path):
    status, _, err = invoke("critical-angle", "--output", str(tmp_path / "missing" / "out.json"))
    assert status == 5
    assert err.startswith("error: IO: ")


def test_output_file(tmp_path):
    target = tmp_path / "table.csv"
    status, out, _ = invoke("family-table", "--n", "4", "--format", "csv", "--output", str(target))
    assert status == 0 and out == b""
    assert target.read_bytes().count(b"\n") == 5


def test_verify_reports_failure_without_error():
    doc = invoke_json("verify", "--theta1", "0", "--theta2", "1", "--theta3", "2", "--omega-sq", "1")
    assert doc["records"][0]["passed"] is False


class TestCsv:
    def test_header_only_when_empty(self):
        assert emit([], "csv", header=("branch", "coord1", "coord2")) == b"branch,coord1,coord2\n"

    def test_lf_and_precision(self):
        status, out, _ = invoke("solve-scalene", "--cos-a", "-0.125", "--format", "csv")
        assert status == 0
        assert b"\r" not in out
        rows = list(csv.DictReader(io.StringIO(out.decode())))
        assert len(rows) == 2
        doc = invoke_json("solve-scalene", "--cos-a", "-0.125")
        for row, rec in zip(rows, doc["records"]):
            for key in ("a", "x", "omega_sq", "theta1", "theta2", "theta3"):
                assert float(row[key]) == rec[key]  # 17 digits round-trip exactly

    def test_contour_header(self):
        status, out, _ = invoke("trace-contour", "--resolution", "64", "--format", "csv", "--coords", "ya")
        assert status == 0
        assert out.startswith(b"branch,coord1,coord2\n")

    def test_inhomogeneous_records_rejected(self):
        from meridian_re import PreconditionError

        with pytest.raises(PreconditionError):
            emit([{"a": 1.0}, {"b": 2.0}], "csv")

    def test_float_formatting(self):
        out = emit([{"v": 0.1, "flag": True, "n": 3}], "csv")
        assert out == b"v,flag,n\n0.10000000000000001,true,3\n"


@pytest.mark.parametrize("argv", [["enumerate", "--a", "1.7"], ["trace-contour", "--resolution", "64"]])
def test_deterministic(argv):
    assert invoke(*argv)[1] == invoke(*argv)[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "meridian_re", "critical-angle", "--format", "csv"],
        capture_output=True,
        check=False,
    )
    assert proc.returncode == 0
    header, values = proc.stdout.decode().splitlines()
    assert header == "cos_ac,ac,xc,cos_ac_bisection"
    assert math.isclose(float(values.split(",")[1]), 1.8124516173296072)


def test_console_script_error_exit():
    proc = subprocess.run(
        ["meridian-re", "solve-isosceles", "--theta", "1.5707963"], capture_output=True, check=False
    )
    assert proc.returncode == 3
    assert proc.stderr.decode().startswith("error: SINGULAR: ")


def test_unverified_configuration_aborts(monkeypatch):
    import meridian_re.cli as cli
    from meridian_re.verify import ResidualReport

    monkeypatch.setattr(
        cli, "verify_configuration", lambda cfg, model: ResidualReport((1.0, 0.0, 0.0), 0.0, 1.0, 1e-9, False)
    )
    status, out, err = invoke("solve-isosceles", "--theta", "0.7")
    assert status == 6
    assert out == b""
    assert err.startswith("error: INTERNAL: ")
