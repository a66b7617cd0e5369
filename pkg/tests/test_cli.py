import io
import json
from pathlib import Path

import pytest

from lauricella_pade.cli import main
from lauricella_pade.io import InstanceFileError, parse_instance_text

DATA = Path(__file__).resolve().parents[1] / "data"


def run(*argv, environ=None):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err, environ=environ or {})
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, text, name="inst.toml"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_validate_I1(tmp_path):
    code, out, _ = run("validate", str(DATA / "I1.toml"), "--out-dir", str(tmp_path))
    assert code == 0
    assert json.loads(out)["hypotheses"]["passed"]
    assert (tmp_path / "validate.json").read_text() == out


def test_validate_double_root():
    code, out, _ = run("validate", str(DATA / "double_root.toml"))
    assert code == 1
    checks = {c["name"]: c for c in json.loads(out)["hypotheses"]["checks"]}
    assert not checks["first"]["passed"] and "repeated" in checks["first"]["witness"]


@pytest.mark.parametrize(
    "text, needle",
    [
        ('alpha = ["0", "1/0"]\ns = ["1", "1"]\n', "field 'alpha[1]': zero denominator"),
        ('alpha = ["0", "1"]\n', "missing field 's'"),
        ('alpha = ["0", "1"]\ns = ["1", "1"]\na_coeffs = ["1"]\n', "either"),
        ('alpha = ["0", "1"]\ns = ["1", "1"]\ncolour = 3\n', "unknown field"),
        ('alpha = ["0", "1"\n', "TOML syntax"),
        ('alpha = ["0", "1"]\ns = ["1", "1"]\nn_max = -1\n', "field 'n_max'"),
        ('alpha = ["0", "1"]\ns = ["1", "1"]\nplace = "6"\n', "field 'place'"),
    ],
)
def test_parse_errors(tmp_path, text, needle):
    code, _, err = run("validate", write(tmp_path, text))
    assert code == 2
    assert needle in err


def test_missing_file():
    code, _, err = run("validate", "/nonexistent/x.toml")
    assert code == 2 and "error" in err


def test_round_trip(tmp_path):
    code, _, _ = run("validate", str(DATA / "I2.toml"), "--out-dir", str(tmp_path))
    assert code == 0
    echo = tmp_path / "instance.toml"
    code2, out2, _ = run("validate", str(echo))
    first = json.loads((tmp_path / "validate.json").read_text())
    assert code2 == 0
    assert json.loads(out2)["instance"] == first["instance"]
    assert parse_instance_text(echo.read_text()).instance == parse_instance_text((DATA / "I2.toml").read_text()).instance


def test_echo_of_double_root_uses_coefficients(tmp_path):
    run("validate", str(DATA / "double_root.toml"), "--out-dir", str(tmp_path))
    echo = parse_instance_text((tmp_path / "instance.toml").read_text())
    assert echo.style == "coeffs"


def test_build(tmp_path):
    code, out, _ = run("build", str(DATA / "I1.toml"), "--out-dir", str(tmp_path))
    assert code == 0
    doc = json.loads(out)
    assert len(doc["certificates"]) == 11
    assert all(c["certified"] and c["Delta_n"] != "0" for c in doc["certificates"])
    assert sorted(p.name for p in tmp_path.glob("pade_n*.json"))[-1] == "pade_n010.json"
    assert (tmp_path / "series.json").exists()


def test_build_is_deterministic(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run("build", str(DATA / "I2.toml"), "--n-max", "3", "--out-dir", str(a))
    run("build", str(DATA / "I2.toml"), "--n-max", "3", "--out-dir", str(b))
    for f in a.iterdir():
        assert f.read_bytes() == (b / f.name).read_bytes()


def test_measure(tmp_path):
    code, out, _ = run("measure", str(DATA / "I1.toml"))
    assert code == 0
    doc = json.loads(out)
    assert doc["applicable"] and doc["mu"]["interval"] is not None
    lo = float(doc["mu"]["interval"][0])
    assert 19.7 < lo < 19.8


def test_measure_not_applicable():
    code, out, _ = run("measure", str(DATA / "I1.toml"), "--beta", "10000")
    assert code == 1 and not json.loads(out)["applicable"]


def test_measure_requires_beta(tmp_path):
    code, _, err = run("measure", write(tmp_path, 'alpha = ["0", "1"]\ns = ["1/2", "1/2"]\n'))
    assert code == 2 and "beta is required" in err


def test_env_override_and_flag_priority():
    env = {"LAURICELLA_PADE_BETA": "10000"}
    code, _, _ = run("measure", str(DATA / "I1.toml"), environ=env)
    assert code == 1  # environment beats the file
    code, _, _ = run("measure", str(DATA / "I1.toml"), "--beta", "100000", environ=env)
    assert code == 0  # the flag beats the environment


def test_bad_flag_value():
    code, _, err = run("measure", str(DATA / "I1.toml"), "--beta", "1/0")
    assert code == 2 and "--beta" in err
    code, _, err = run("measure", str(DATA / "I1.toml"), "--epsilon", "W/2")
    assert code == 2


def test_scan_empty(tmp_path):
    code, out, _ = run("scan", str(DATA / "I1.toml"), "--h-max", "0")
    assert code == 0
    assert out.strip().splitlines() == [out.strip()]  # header only
    assert out.startswith("lambda,")


def test_scan_small(tmp_path):
    code, out, _ = run("scan", str(DATA / "I1.toml"), "--h-max", "2", "--precision", "128", "--out-dir", str(tmp_path))
    assert code == 0
    summary = json.loads(out)
    assert summary["cells"] == 24 and summary["violations"] == []
    assert len((tmp_path / "scan.csv").read_text().splitlines()) == 25


def test_eval_arch_and_padic():
    code, out, _ = run("eval", str(DATA / "I2.toml"), "--precision", "64")
    vals = json.loads(out)["values"]
    assert code == 0 and len(vals) == 2
    assert float(vals[0]["lower"]) <= float(vals[0]["upper"])
    code, out, _ = run("eval", str(DATA / "I1_5adic.toml"))
    v = json.loads(out)["values"][0]
    assert code == 0 and v["p"] == 5 and v["valuation"] == 6


def test_eval_divergent():
    code, _, err = run("eval", str(DATA / "I1.toml"), "--beta", "1/2")
    assert code == 2 and "must exceed" in err


def test_epsilon_forms():
    assert parse_instance_text('alpha=["0","1"]\ns=["1","1"]\nepsilon="V/3"\n').options["epsilon"][1] == pytest.approx(1 / 3)
    with pytest.raises(InstanceFileError):
        parse_instance_text('alpha=["0","1"]\ns=["1","1"]\nepsilon="V*3"\n')


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "lauricella_pade", "validate", str(DATA / "I1.toml")], capture_output=True)
    assert proc.returncode == 0
