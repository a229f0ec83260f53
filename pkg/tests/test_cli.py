"""Tests for the command-line interface: payload shapes and exit codes."""

import csv
import io
import json

from cuspsums import cli


def _run(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cusps_list_json(capsys):
    code, out, err = _run(["cusps", "list", "--N", "12"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["N"] == 12 and payload["count"] == 6
    assert len(payload["cusps"]) == 6
    entry = payload["cusps"][0]
    for key in ("cusp", "numerator", "denominator", "width", "atkin_lehner"):
        assert key in entry
    assert err.startswith("# cuspsums")


def test_cusps_list_csv(capsys):
    code, out, _ = _run(["cusps", "list", "--N", "6", "--format", "csv"],
                        capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["numerator", "denominator", "width", "atkin_lehner"]
    assert len(rows) == 5  # header + 4 cusps of level 6


def test_cusps_equiv(capsys):
    code, out, _ = _run(["cusps", "equiv", "--N", "72",
                         "--a", "2/3", "--b", "1/15"], capsys)
    assert code == 0 and json.loads(out)["equivalent"] is True
    code, out, _ = _run(["cusps", "equiv", "--N", "72",
                         "--a", "2/3", "--b", "1/6"], capsys)
    assert code == 0 and json.loads(out)["equivalent"] is False


def test_cusps_scaling(capsys):
    code, out, _ = _run(["cusps", "scaling", "--N", "12", "--w", "3",
                         "--atkin-lehner"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["cusp"] == "1/3"
    assert payload["maps_infinity_to"] == [1, 3]
    assert "entries" in payload["scaling"]
    a, b, c, d = payload["stabilizer"]
    assert a * d - b * c == 1 and c % 12 == 0


def test_kloosterman_eval(capsys):
    code, out, _ = _run(["kloosterman", "eval", "--pquv", "2,3,1,1",
                         "--m", "1", "--n", "1", "--c", "6"], capsys)
    assert code == 0
    payload = json.loads(out)
    re, im = payload["value"]
    assert abs(re + 1.0) < 1e-9 and abs(im) < 1e-9
    assert payload["modulus"]["allowed"] is True
    assert payload["method"] == "closed-form"
    code, out, _ = _run(["kloosterman", "eval", "--pquv", "2,3,1,1",
                         "--m", "1", "--n", "1", "--c", "6", "--oracle"],
                        capsys)
    payload2 = json.loads(out)
    assert payload2["method"] == "double-coset"
    assert abs(payload2["value"][0] - re) < 1e-9


def test_kloosterman_table_csv(capsys):
    code, out, _ = _run(["kloosterman", "table", "--pquv", "1,1,2,3",
                         "--m", "1", "--n", "1,2", "--c-max", "12",
                         "--format", "csv"], capsys)
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["p", "q", "u", "v", "chi", "m", "n", "c", "surd",
                       "value_re", "value_im"]
    assert all(row[8] == "6" for row in rows[1:])
    assert {row[7] for row in rows[1:]} == {"1", "5", "7", "11"}


def test_eisenstein_phi(capsys):
    code, out, _ = _run(["eisenstein", "phi", "--N", "6", "--r", "2",
                         "--w", "3", "--n", "1", "--u-re", "1.5"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["method"] == "closed-form"
    code, out2, _ = _run(["eisenstein", "phi", "--N", "6", "--r", "2",
                          "--w", "3", "--n", "1", "--u-re", "1.5",
                          "--direct", "--X", "60"], capsys)
    assert code == 0
    near = json.loads(out2)
    assert abs(near["value"][0] - payload["value"][0]) \
        <= near["bound"] + 1e-6


def test_verify_all_small(capsys):
    code, out, err = _run(["verify", "all", "--n-max", "2"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] is True
    assert len(payload["results"]) == 9
    for result in payload["results"]:
        assert result["passed"] is True and result["failures"] == []
    assert "seconds" not in out  # timings stay on stderr
    assert "s]" in err or "sec" in err or err.count("\n") >= 9


def test_deterministic_output(capsys):
    args = ["kloosterman", "table", "--pquv", "2,1,3,1", "--m", "1,2",
            "--n", "1", "--c-max", "10"]
    _, first, _ = _run(args, capsys)
    _, second, _ = _run(args, capsys)
    assert first == second


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = _run(["cusps", "list", "--N", "6",
                         "--output", str(target)], capsys)
    assert code == 0
    assert json.loads(target.read_text())["count"] == 4


def test_config_presets(tmp_path, capsys):
    preset = tmp_path / "run.cfg"
    preset.write_text("# defaults for a small verify run\nn-max = 2\n")
    code, out, _ = _run(["verify", "all", "--config", str(preset)], capsys)
    assert code == 0 and json.loads(out)["passed"] is True


def test_exit_codes(capsys, monkeypatch):
    # malformed arguments: argparse exits with 2
    try:
        cli.main(["kloosterman", "eval", "--pquv", "2,3,1",
                  "--m", "1", "--n", "1", "--c", "6"])
        assert False, "short pquv must exit"
    except SystemExit as exc:
        assert exc.code == 2
    capsys.readouterr()
    # domain errors: exit code 3
    code, _, err = _run(["kloosterman", "eval", "--pquv", "2,2,1,1",
                         "--m", "1", "--n", "1", "--c", "4"], capsys)
    assert code == 3 and "domain error" in err
    code, _, err = _run(["eisenstein", "phi", "--N", "6", "--r", "2",
                         "--w", "3", "--n", "0", "--u-re", "1.5"], capsys)
    assert code == 3
    code, _, err = _run(["eisenstein", "phi", "--N", "6", "--r", "2",
                         "--w", "3", "--n", "1", "--u-re", "0.5"], capsys)
    assert code == 3
    monkeypatch.setenv("CUSPSUMS_TOL", "5")
    code, _, err = _run(["verify", "all", "--n-max", "2"], capsys)
    assert code == 3 and "domain error" in err
