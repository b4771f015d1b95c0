import json
import warnings

import jsonschema
import pytest

from hamvc.cli import main
from hamvc.constructions import ConstructionSpec, construct
from hamvc.core import HammingParams, PointSet
from hamvc.formats import format_point_set, load_schema, read_point_set
from hamvc.shatter import vc_dimension


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    full = tmp_path / "full_h24.pts"
    full.write_text(format_point_set(PointSet.full(HammingParams(2, 4))))
    empty = tmp_path / "empty.pts"
    empty.write_text("# nothing\n2 3 1\n")
    return tmp_path, full, empty


def test_compute_text(capsys, tmp_path):
    assert main(["construct", "u1", "--q", "4", "-o", str(tmp_path / "u1.pts")]) == 0
    code, out, _ = run(capsys, "compute", "-i", tmp_path / "u1.pts")
    assert code == 0
    assert out.splitlines()[0] == "vc = 1"
    assert out.splitlines()[1] == "W = (0, 0)"


def test_compute_json(capsys, files):
    _, full, empty = files
    code, out, _ = run(capsys, "compute", "-i", full, "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["dimension"] == 3
    jsonschema.validate(obj, load_schema("vc_result"))
    code, out, _ = run(capsys, "compute", "-i", empty)
    assert code == 0 and out == "vc = -1\n"


def test_compute_byte_stable(capsys, files):
    _, full, _ = files
    a = run(capsys, "compute", "-i", full)[1]
    b = run(capsys, "compute", "-i", full)[1]
    assert a == b


def test_compute_parse_error(capsys, tmp_path):
    bad = tmp_path / "dup.pts"
    bad.write_text("2 3 1\n0 0\n0 0\n")
    code, out, err = run(capsys, "compute", "-i", bad)
    assert code == 2 and "line 3" in err and out == ""
    code, _, err = run(capsys, "compute", "-i", tmp_path / "missing.pts")
    assert code == 2


def test_construct_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "u2", "--q", "5")
    body = [ln for ln in out.splitlines() if not ln.startswith("#")]
    assert code == 0 and body[0] == "2 5 1" and len(body) == 16
    assert "# construction U2(q=5) in H(2,5,1)" in out and "# size 15" in out
    code, _, err = run(capsys, "construct", "band3", "--d", 3, "--q", 6, "-o", tmp_path / "b.pts")
    assert code == 0 and read_point_set(tmp_path / "b.pts").size == 108
    code, _, err = run(capsys, "construct", "u3", "--q", 5)
    assert code == 2 and "q must be even" in err
    code, _, _ = run(capsys, "construct", "nope", "--q", 5)
    assert code == 2


@pytest.mark.parametrize(
    "spec,vc",
    [(("U1", 5), 1), (("U2", 6), 2), (("U3", 4), 1), (("DIAG", 3, 3), 0), (("USTAR", 5), 1), (("BAND3", 7, 3), 2)],
)
def test_construct_compute_round_trip(capsys, tmp_path, spec, vc):
    name, q, *d = spec
    args = ["construct", name.lower(), "--q", q] + (["--d", d[0]] if d else []) + ["-o", tmp_path / "s.pts"]
    assert run(capsys, *args)[0] == 0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert read_point_set(tmp_path / "s.pts") == construct(ConstructionSpec(name, q, d[0] if d else None))
    code, out, _ = run(capsys, "compute", "-i", tmp_path / "s.pts", "--format", "json")
    assert json.loads(out)["dimension"] == vc


def test_detect(capsys, files):
    tmp, full, _ = files
    code, out, _ = run(capsys, "detect", "fist", "-i", full, "--emit-witness", "--format", "json")
    obj = json.loads(out)
    assert code == 0 and len(obj["witness"]["W"]) == 3
    jsonschema.validate(obj, load_schema("configuration"))
    run(capsys, "construct", "band3", "--d", 3, "--q", 7, "-o", tmp / "b7.pts")
    code, out, _ = run(capsys, "detect", "rectangle", "-i", tmp / "b7.pts")
    assert code == 1 and out.startswith("no rectangle")
    run(capsys, "construct", "u1", "--q", 4, "-o", tmp / "u1.pts")
    code, _, err = run(capsys, "detect", "pluck", "-i", tmp / "u1.pts")
    assert code == 2 and "t=2" in err


def test_detect_band3_q6_finds_rectangle(capsys, tmp_path):
    # the q=6 band set is not rectangle-free; see the construction tests
    run(capsys, "construct", "band3", "--d", 3, "--q", 6, "-o", tmp_path / "b6.pts")
    code, out, _ = run(capsys, "detect", "rectangle", "-i", tmp_path / "b6.pts")
    assert code == 0 and out.startswith("Rectangle")


def test_detect_witness_side_condition(capsys, tmp_path):
    f = tmp_path / "c.pts"
    f.write_text("2 3 1\n0 1\n1 0\n1 1\n")
    code, out, _ = run(capsys, "detect", "corner", "-i", f, "--emit-witness")
    assert code == 0 and "witness unavailable: missing u_x" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "T1.3", "--q", 4, "--mode", "exhaustive")
    doc = json.loads(out)
    assert code == 0 and doc["reports"][0]["work"] == 560
    jsonschema.validate(doc, load_schema("suite"))
    code, out, _ = run(capsys, "verify", "P1.6", "--d", 3, "--q", 3)
    doc = json.loads(out)
    assert code == 0 and doc["discrepancies"]
    code, _, err = run(capsys, "verify", "X1.1", "--q", 3)
    assert code == 2 and "unknown claim" in err


def test_verify_refuted_and_infeasible(capsys):
    code, out, _ = run(capsys, "verify", "P1.8", "--q", 6)
    assert code == 1 and json.loads(out)["reports"][0]["outcome"] == "refuted"
    code, out, _ = run(capsys, "verify", "T1.2", "--q", 3, "--mode", "exhaustive", "--cap", 5)
    assert code == 2
    code, _, err = run(capsys, "verify", "T1.2", "--q", 3, "--mode", "sampled")
    assert code == 2 and "--seed" in err


def test_verify_output_stable(capsys, tmp_path):
    a = run(capsys, "verify", "T1.2", "T1.8t2", "--q", 3, "--seed", 7)[1]
    b = run(capsys, "verify", "T1.2", "T1.8t2", "--q", 3, "--seed", 7)[1]
    assert a == b


def test_threshold(capsys, tmp_path):
    code, out, _ = run(capsys, "threshold", "--d", 2, "--q", 3, "--t", 1, "--k", 2, "-o", tmp_path / "c.pts")
    assert code == 0 and out.startswith("m* = 6")
    C = read_point_set(tmp_path / "c.pts")
    assert C.size == 5 and vc_dimension(C).dimension < 2
    code, out, _ = run(capsys, "threshold", "--d", 2, "--q", 4, "--t", 1, "--k", 2)
    assert out.startswith("m* = 9")
    code, _, err = run(capsys, "threshold", "--d", 2, "--q", 9, "--t", 1, "--k", 3)
    assert code == 2 and "projected" in err


def test_progress_goes_to_stderr(capsys):
    code, out, err = run(capsys, "verify", "P1.1", "--q", 4, "--d", 2, "--progress")
    assert code == 0 and "progress:" in err and "progress" not in out


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["compute"]) == 2
    capsys.readouterr()
