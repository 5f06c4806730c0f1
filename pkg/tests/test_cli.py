import json

import pytest

from floorlog.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_terms_text(capsys):
    code, out, _ = run(capsys, "terms", "--k", "2", "--alpha", "1/2", "--count", "8")
    assert code == 0
    assert [int(line.split("\t")[1]) for line in out.splitlines()] == [0, 1, 2, 2, 2, 3, 3, 3]


def test_terms_json_and_groups(capsys):
    code, out, _ = run(capsys, "terms", "--k", "2", "--alpha", "0", "--count", "4", "--groups", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["values"] == [0, 1, 1, 2] and data["schema"] == 1
    assert data["groups"] == [{"m": 0, "values": [0]}, {"m": 1, "values": [1]}, {"m": 2, "values": [1, 2]}]


def test_terms_empty_and_csv(capsys):
    assert run(capsys, "terms", "--count", "0") == (0, "", "")
    code, out, _ = run(capsys, "terms", "--k", "3", "--alpha", "log(3)", "--count", "3", "--format", "csv")
    assert out.splitlines()[0] == "n,a,tau_len,tau"


def test_terms_bad_alpha(capsys):
    code, _, err = run(capsys, "terms", "--alpha", "log(-3)")
    assert code == 2 and err
    assert run(capsys, "terms", "--k", "1")[0] == 2


def test_coeffs(capsys):
    code, out, _ = run(capsys, "coeffs", "--k", "2", "--alpha", "1/2", "--mmax", "9", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["all_match"]
    assert data["rows"][-1]["b_brute"] == data["rows"][-1]["b_closed"] == 2198
    code, out, _ = run(capsys, "coeffs", "--k", "2", "--alpha", "0", "--mmax", "6", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "m,b_brute,b_closed,match,rational_part_coeff,floor_term"
    assert all(line.split(",")[3] == "True" for line in out.splitlines()[1:])
    code, out, _ = run(capsys, "coeffs", "--k", "2", "--alpha=-3/2", "--mmax", "0", "--format", "json")
    assert [r["b_brute"] for r in json.loads(out)["rows"]] == [-2]


def test_coeffs_budget(capsys, monkeypatch):
    monkeypatch.setenv("FLOORLOG_BUDGET", "64")
    code, _, err = run(capsys, "coeffs", "--k", "2", "--alpha", "1/2", "--mmax", "9")
    assert code == 3 and "budget" in err


def test_digits(capsys):
    code, out, _ = run(capsys, "digits", "--k", "2", "--alpha", "log(3/1)", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["match"]
    assert (data["period"]["preperiod"], data["period"]["period"]) == (0, 2)
    assert data["class"] == "Rational(3)"
    code, out, _ = run(capsys, "digits", "--k", "2", "--alpha", "1/2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["period"]["period"] is None and data["class"] == "Irrational"
    code, out, _ = run(capsys, "digits", "--k", "2", "--alpha", "1", "--format", "json")
    data = json.loads(out)
    assert set(data["g"]) == {0} and (data["period"]["preperiod"], data["period"]["period"]) == (0, 1)


def test_digits_text_trailer(capsys):
    _, out, _ = run(capsys, "digits", "--k", "2", "--alpha", "1/2", "--mmax", "16")
    assert out.splitlines()[-1] == "# k^alpha: Irrational"
    assert "none within horizon" in out.splitlines()[-2]


def test_kernel_alpha0(capsys):
    code, out, _ = run(capsys, "kernel", "--k", "2", "--alpha", "0", "--emax", "6", "--trunc", "4096", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["stabilized"] and data["verdict"].startswith("evidence")


@pytest.mark.slow
def test_kernel_half_not_stabilized(capsys):
    # Truncated-kernel rank saturates near 17 at this length; see the notes ledger.
    code, out, _ = run(capsys, "kernel", "--k", "2", "--alpha", "1/2", "--emax", "8", "--trunc", "16384", "--format", "json")
    assert code == 0 and json.loads(out)["stabilized"] is False


def test_kernel_emax_too_small(capsys):
    assert run(capsys, "kernel", "--emax", "1")[0] == 2


def test_guess_constant_file(capsys, tmp_path):
    path = tmp_path / "seq.txt"
    path.write_text("5 5 5 5 5 5 5 5", encoding="utf-8")
    code, out, _ = run(capsys, "guess", "--file", str(path), "--format", "json")
    lin = json.loads(out)["detectors"]["linear"]
    assert code == 0 and lin["found"] and lin["parameters"]["order"] == 1 and lin["validated"]


def test_guess_malformed(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 2 three\n", encoding="utf-8")
    assert run(capsys, "guess", "--file", str(path))[0] == 2
    assert run(capsys, "guess", "--file", str(tmp_path / "missing.txt"))[0] == 2
    assert run(capsys, "guess")[0] == 2


def test_guess_generated(capsys):
    code, out, _ = run(capsys, "guess", "--k", "2", "--alpha", "log(3)", "--generate", "b", "--count", "15",
                       "--format", "json")
    assert code == 0 and json.loads(out)["detectors"]["rational"]["found"]
    code, out, _ = run(capsys, "guess", "--k", "2", "--alpha", "1/2", "--generate", "b", "--count", "61",
                       "--format", "json")
    det = json.loads(out)["detectors"]
    assert not any(d["found"] for d in det.values())
    _, out, _ = run(capsys, "guess", "--k", "2", "--alpha", "1/2", "--generate", "b", "--count", "61")
    assert "none within bounds" in out


def test_report_deterministic(capsys, tmp_path):
    args = ["report", "--k", "2", "--alpha", "1/2", "--trunc", "512", "--seed", "7"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0 and out1 == out2
    data = json.loads(out1)
    assert data["schema"] == 1 and data["version"]
    assert {"coeffs", "digits", "kernel", "guess", "properties"} <= set(data["sections"])
    assert all(s["status"] == "ok" for s in data["sections"].values())
    assert data["sections"]["digits"]["match"] is True
    dest = tmp_path / "r.json"
    assert run(capsys, *args, "-o", str(dest))[0] == 0
    assert dest.read_text(encoding="utf-8") == out1


def test_report_timing_flag(capsys):
    _, out, _ = run(capsys, "report", "--k", "2", "--alpha", "0", "--trunc", "256", "--timing")
    assert "wall_time_ms" in json.loads(out)["sections"]["kernel"]


def test_report_alpha0_rational(capsys):
    code, out, _ = run(capsys, "report", "--k", "2", "--alpha", "0", "--trunc", "512")
    assert code == 0 and json.loads(out)["sections"]["guess"]["rational"]["found"] is True


def test_report_invalid_alpha(capsys):
    assert run(capsys, "report", "--alpha", "1/0")[0] == 2
    assert run(capsys, "report", "--alpha", "dec:0.5~0.001")[0] == 2
