import json

import pytest

from htutte.cli import main

Z4_CODE = {"ring": {"kind": "Zm", "m": 4}, "n": 3, "generators": [[1, 1, 0], [0, 0, 3]]}
F_B1 = {"n": 3, "d": 1, "coeffs": [{"subset": [1], "value": "1"}, {"subset": [3], "value": "-1"}]}
HAMMING_CODE = {
    "ring": {"kind": "GF", "p": 2, "k": 1},
    "n": 8,
    "generators": [
        [1, 0, 0, 0, 0, 1, 1, 1],
        [0, 1, 0, 0, 1, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 0, 1],
        [0, 0, 0, 1, 1, 1, 1, 0],
    ],
}


@pytest.fixture
def files(tmp_path):
    code = tmp_path / "code.json"
    code.write_text(json.dumps(Z4_CODE))
    f = tmp_path / "f.json"
    f.write_text(json.dumps(F_B1))
    hamming = tmp_path / "hamming.json"
    hamming.write_text(json.dumps(HAMMING_CODE))
    return {"code": str(code), "f": str(f), "hamming": str(hamming), "dir": tmp_path}


def test_harm_basis_text(capsys):
    assert main(["harm", "basis", "3", "1"]) == 0
    out = capsys.readouterr().out
    assert "dim Harm_1(3) = 2" in out
    assert "b1" in out and "b2" in out


def test_harm_basis_json(capsys):
    assert main(["harm", "basis", "4", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload) == 2
    assert payload[0]["coeffs"][0] == {"subset": [1, 2], "value": "1"}


def test_code_enumerate_and_dual(files, capsys):
    assert main(["code", "enumerate", files["code"]]) == 0
    out = capsys.readouterr().out
    assert "16 codewords" in out
    assert main(["code", "dual", files["code"], "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["size"] == 4


def test_wenum_matches_paper(files, capsys):
    assert main(["wenum", files["code"], files["f"]]) == 0
    out = capsys.readouterr().out
    assert "W = -3*x^2*y + 3*x*y^2" in out
    assert "Z = -3*x + 3*y" in out


def test_wenum_basis_mode(files, capsys):
    assert main(["wenum", files["code"], "--basis-d", "1"]) == 0
    out = capsys.readouterr().out
    assert "b1: W = -3*x^2*y + 3*x*y^2" in out
    assert "b2: W = -3*x^2*y + 3*x*y^2" in out
    assert "linearity" in out


def test_dm_from_code_and_check_roundtrip(files, capsys):
    assert main(["dm", "from-code", files["code"]]) == 0
    dm_json = capsys.readouterr().out
    dm_file = files["dir"] / "dm.json"
    dm_file.write_text(dm_json)
    assert main(["dm", "check", str(dm_file)]) == 0
    assert "PASS" in capsys.readouterr().out


def test_dm_check_failure_exit_code(files, capsys):
    dm_file = files["dir"] / "bad.json"
    dm_file.write_text(
        json.dumps(
            {
                "n": 1,
                "s": [[[], "0"], [[1], "2"]],
                "t": [[[], "0"], [[1], "0"]],
            }
        )
    )
    assert main(["dm", "check", str(dm_file)]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_tutte_and_coboundary(files, capsys):
    assert main(["dm", "from-code", files["code"]]) == 0
    dm_file = files["dir"] / "dm.json"
    dm_file.write_text(capsys.readouterr().out)
    assert main(["tutte", str(dm_file), files["f"]]) == 0
    assert "T = (x-1)*(y-1) - 1" in capsys.readouterr().out
    assert main(["coboundary", str(dm_file), files["f"]]) == 0
    out = capsys.readouterr().out
    assert "Z = -x*lambda + x + y*lambda - y" in out


def test_verify_commands(files, capsys):
    for what in ("greene", "macwilliams", "dualities", "all"):
        assert main(["verify", what, files["code"], files["f"]]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out


def test_verify_all_json_schema(files, capsys):
    assert main(["verify", "all", files["code"], files["f"], "--json", "--seed", "5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True
    assert payload["seed"] == 5
    assert any(c["name"] == "greene-coboundary" for c in payload["checks"])


def test_verify_suite_deterministic(files, capsys):
    args = ["verify", "suite", "--cases", "6", "--seed", "11"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "PASS" in first


def test_verify_suite_empty(capsys):
    assert main(["verify", "suite", "--cases", "0"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_requires_files():
    with pytest.raises(SystemExit):
        main(["verify", "greene"])


def test_molien_text_and_gate(capsys):
    assert main(["molien", "--type", "II", "-m", "1", "-d", "0", "-K", "32"]) == 0
    out = capsys.readouterr().out
    assert "group order 16" in out
    assert "matches closed form" in out


def test_molien_json(capsys):
    assert main(["molien", "--type", "III", "-m", "2", "-d", "3", "-K", "16", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["coeffs"][1] == 1
    assert payload["matches_closed_form"] is True


def test_molien_plot(tmp_path, capsys):
    target = tmp_path / "series.png"
    assert main(
        ["molien", "--type", "II", "-m", "1", "-d", "0", "-K", "16", "--plot", str(target)]
    ) == 0
    assert target.exists() and target.stat().st_size > 0


def test_invariance_command(files, capsys):
    f0 = files["dir"] / "f0.json"
    f0.write_text(json.dumps({"n": 8, "d": 0, "coeffs": [{"subset": [], "value": "1"}]}))
    assert main(["invariance", files["hamming"], str(f0), "--type", "II", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["generators"]["S"]["scalar"] == "1"
    assert payload["generators"]["omega"]["degree_forced_value"] == "1"


def test_code_dual_conjugate(tmp_path, capsys):
    gf4 = tmp_path / "gf4.json"
    gf4.write_text(
        json.dumps({"ring": {"kind": "GF", "p": 2, "k": 2}, "n": 2, "generators": [[1, 1]]})
    )
    assert main(["code", "dual", str(gf4), "--conjugate", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["size"] == 4
    # conjugation needs a square-order field
    z4 = tmp_path / "z4.json"
    z4.write_text(json.dumps({"ring": {"kind": "Zm", "m": 4}, "n": 2, "generators": [[1, 1]]}))
    assert main(["code", "dual", str(z4), "--conjugate"]) == 2


def test_dm_from_code_gamma_delta(files, capsys):
    assert main(["dm", "from-code", files["code"], "--flavor", "gamma-delta"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["n"] == 3
    # gamma ranks at the full set equal log |C| = 2
    full_entry = [v for s, v in payload["s"] if s == [1, 2, 3]]
    assert full_entry == ["2"]


def test_wenum_m2_json(files, capsys):
    assert main(["wenum", files["code"], files["f"], "-m", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert "w" in payload["f"] and "z" in payload["f"]


def test_verify_suite_json_counts(capsys):
    assert main(["verify", "suite", "--cases", "5", "--seed", "3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["counts"] == {"pass": 5, "fail": 0}
    assert payload["ok"] is True


def test_nonharmonic_rejected_without_flag(files, capsys):
    bad = files["dir"] / "bad_f.json"
    bad.write_text(json.dumps({"n": 3, "d": 1, "coeffs": [{"subset": [1], "value": "1"}]}))
    assert main(["wenum", files["code"], str(bad)]) == 2
    assert "allow-nonharmonic" in capsys.readouterr().err


def test_missing_file_is_reported(capsys):
    assert main(["code", "enumerate", "/nonexistent/code.json"]) == 2
    assert "error" in capsys.readouterr().err


def test_wenum_requires_function_or_basis(files):
    with pytest.raises(SystemExit):
        main(["wenum", files["code"]])


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
