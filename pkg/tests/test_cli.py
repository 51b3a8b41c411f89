import json
import subprocess
import sys
from fractions import Fraction as F

import pytest

from tetrapbf.cli import dumps, main, parse_spec

TOEPLITZ = '{"kind":"toeplitz","a":"6","b":"11","c":"6","arithmetic":"exact"}'


@pytest.fixture
def spec_file(tmp_path):
    def write(text, name="in.json"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_toeplitz(capsys, spec_file):
    code, out, _ = run(capsys, "analyze", spec_file(TOEPLITZ), "--depth", "10")
    report = json.loads(out)
    assert code == 0 and report["oscillatory"] is True
    last = F(report["continued_fraction"]["convergents"][-1])
    assert abs(last - F(6, 5)) < F(1, 1000)


def test_analyze_witness(capsys, spec_file):
    code, out, _ = run(capsys, "analyze", spec_file('{"kind":"toeplitz","a":1,"b":5,"c":1}'),
                       "--depth", "2")
    report = json.loads(out)
    assert code == 0 and report["oscillatory"] is False
    assert report["per_depth"][1]["witness"] == {"rows": [0, 1], "cols": [0, 1], "value": "-4"}


def test_analyze_float_mode(capsys, spec_file):
    code, out, _ = run(capsys, "analyze", spec_file(TOEPLITZ), "--depth", "12", "--float")
    report = json.loads(out)
    assert report["arithmetic"] == "float64"
    assert abs(float(report["continued_fraction"]["convergents"][-1]) - 1.2) < 1e-3


def test_malformed_json(capsys, spec_file):
    code, _, err = run(capsys, "analyze", spec_file('{"kind": "bands",\n "c": [1, 2'))
    assert code == 1 and ":2:" in err


def test_bad_field_has_context(capsys, spec_file):
    code, _, err = run(capsys, "analyze", spec_file('{"kind":"bands","c":["1","x"],"b":["1"],"a":[]}'))
    assert code == 1 and "c[1]" in err


def test_nonpositive_a(capsys, spec_file):
    code, _, err = run(capsys, "analyze", spec_file('{"kind":"bands","c":[1,1,1],"b":[1,1],"a":[0]}'))
    assert code == 1 and "a_2" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_factorize(capsys, spec_file):
    code, out, _ = run(capsys, "factorize", spec_file(TOEPLITZ), "--alpha2", "1", "--depth", "5")
    report = json.loads(out)
    assert code == 0
    assert len(report["alphas"]) == 16 and report["all_positive"]
    assert report["product_check"] == "exact"


def test_factorize_zero_pivot(capsys, spec_file):
    code, _, err = run(capsys, "factorize", spec_file(TOEPLITZ), "--alpha2", "11/6", "--depth", "5")
    assert code == 2 and "ZeroPivot" in err and "n=1" in err


def test_factorize_singular(capsys, spec_file):
    code, _, err = run(capsys, "factorize", spec_file('{"kind":"bands","c":[1,1,1],"b":[1,1],"a":[1]}'))
    assert code == 2 and "SingularMinor" in err


def test_factorize_alphas_roundtrip(capsys, spec_file):
    alphas = ["6", "1", "5/6", "25/6", "6/5", "6/5", "18/5"]
    code, out, _ = run(capsys, "factorize", spec_file(json.dumps({"kind": "alphas", "alphas": alphas})))
    rec = json.loads(out)["reconstructed"]
    assert rec["c"] == ["6", "6", "6"] and rec["b"] == ["11", "11"] and rec["a"] == ["6"]


def test_transform_retract(capsys, spec_file):
    code, out, _ = run(capsys, "transform", spec_file(TOEPLITZ), "--retract=-6/5", "--depth", "3")
    spec = json.loads(out)["output"]
    assert spec["b"][0] == "19/5" and spec["c"][1] == "24/5"


def test_transform_check_is_toeplitz(capsys, spec_file):
    code, out, _ = run(capsys, "transform", spec_file(TOEPLITZ), "--check")
    spec = json.loads(out)["output"]
    assert spec == {"kind": "toeplitz", "a": "36", "b": "36", "c": "11", "arithmetic": "exact"}


def test_transform_tail_is_reingestable(capsys, spec_file):
    code, out, _ = run(capsys, "transform", spec_file(TOEPLITZ), "--tail", "1", "--depth", "6")
    spec = json.loads(out)["output"]
    assert spec["c"][0] == "25/6" and spec["b"][0] == "10"
    again = parse_spec(json.dumps(spec))
    assert again.bands.c(0) == F(25, 6) and again.bands.length == 6


def test_shifted_requires_check(capsys, spec_file):
    with pytest.raises(SystemExit) as exc:
        main(["transform", spec_file(TOEPLITZ), "--tail", "1", "--shifted", "1"])
    assert exc.value.code == 1


def test_convergents_csv_and_json_agree(capsys, spec_file):
    path = spec_file(TOEPLITZ)
    _, csv_out, _ = run(capsys, "convergents", path, "--k", "1", "--max-n", "6", "--format", "csv")
    _, json_out, _ = run(capsys, "convergents", path, "--k", "1", "--max-n", "6")
    lines = csv_out.strip().split("\n")
    assert lines[0] == "n,convergent,gap"
    assert lines[1] == "2,11/6," and lines[2].startswith("3,17/12,")
    rows = json.loads(json_out)["rows"]
    assert [r["convergent"] for r in rows] == [ln.split(",")[1] for ln in lines[1:]]
    values = [F(r["convergent"]) for r in rows]
    assert all(x > y for x, y in zip(values, values[1:]))


def test_convergents_base_case(capsys, spec_file):
    _, out, _ = run(capsys, "convergents", spec_file(TOEPLITZ), "--k", "1", "--max-n", "2")
    assert json.loads(out)["rows"] == [{"n": 2, "convergent": "11/6", "gap": None}]


def test_report_roundtrip_is_byte_identical(capsys, spec_file):
    _, out, _ = run(capsys, "analyze", spec_file(TOEPLITZ), "--depth", "6")
    assert dumps(json.loads(out)) == out


def test_deterministic_across_jobs(capsys, spec_file):
    path = spec_file(TOEPLITZ)
    _, one, _ = run(capsys, "analyze", path, "--depth", "9", "--jobs", "1")
    _, four, _ = run(capsys, "analyze", path, "--depth", "9", "--jobs", "4")
    assert one == four


def test_decimal_strings_are_exact():
    spec = parse_spec('{"kind":"toeplitz","a":0.1,"b":"0.5","c":"1/3"}')
    assert spec.bands.a(2) == F(1, 10) and spec.bands.c(0) == F(1, 3)


def test_minor_limit_env(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(TOEPLITZ)
    cmd = [sys.executable, "-m", "tetrapbf.cli", "analyze", str(path), "--depth", "4", "--brute-force"]
    ok = subprocess.run(cmd, capture_output=True, text=True)
    assert ok.returncode == 0
    limited = subprocess.run(cmd, capture_output=True, text=True, env={"PBF_MINOR_LIMIT": "3", "PATH": ""})
    assert limited.returncode == 1 and "limit" in limited.stderr
