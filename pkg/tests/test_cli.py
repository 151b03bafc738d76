import json

import pytest

from pyramids.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_examples(capsys):
    assert run(capsys, "count", "--a", "2", "--m", "3")[:2] == (0, "10\n")
    assert run(capsys, "count", "--a", "2", "--m", "1")[:2] == (0, "1\n")
    code, out, _ = run(capsys, "count", "--a", "3", "--m", "3", "--verify", "enum")
    assert code == 0 and out.split() == ["28", "verified"]
    code, out, _ = run(capsys, "count", "--a", "2", "--m", "3", "--class", "right")
    assert out == "5\n"
    code, out, _ = run(capsys, "count", "--a", "2", "--m", "4", "--class", "flat", "--verify", "enum")
    assert out.split() == ["39", "verified"]


def test_exit_codes(capsys):
    assert run(capsys, "count", "--a", "2", "--m", "0")[0] == 2
    assert run(capsys, "count", "--a", "1", "--m", "3")[0] == 2
    assert run(capsys, "count", "--a", "2", "--m", "30", "--verify", "enum", "--budget", "100")[0] == 3
    with pytest.raises(SystemExit) as exc:
        main(["count", "--a", "2", "--m", "3", "--bogus"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_convert_string_to_pyramid(capsys):
    code, out, _ = run(capsys, "convert", "--from", "string", "--to", "pyramid", "--a", "2", "1010")
    assert code == 0
    assert json.loads(out) == {"schema_version": 1, "type": "pyramid", "a": 2, "pieces": [[0, 1], [0, 2]]}


def test_convert_to_tree(capsys):
    code, out, _ = run(capsys, "convert", "--from", "string", "--to", "tree", "--a", "3", "110000")
    assert json.loads(out)["tree"] == [[None, None, None], None, None]


@pytest.mark.parametrize("src,dst,a,text", [
    ("string", "pyramid", 2, "100110"),
    ("pyramid", "string", 2, '{"a":2,"pieces":[[0,1],[-1,2],[0,3]]}'),
    ("string", "walk", 3, "100"),
    ("path", "tree", 2, "UUDD"),
    ("tree", "path", 3, '[null,[null,null,null],null]'),
    ("string", "pyramid", 4, "1100000010000000"[:12]),
])
def test_convert_round_trips(capsys, src, dst, a, text):
    code, out, err = run(capsys, "convert", "--from", src, "--to", dst, "--a", str(a), text, "--roundtrip")
    assert code == 0, err
    assert "identical" in err


def test_convert_errors(capsys):
    code, _, err = run(capsys, "convert", "--from", "string", "--to", "pyramid", "--a", "3", "100110")
    assert code == 2 and "a = 2" in err
    assert run(capsys, "convert", "--from", "pyramid", "--to", "string", "--a", "2", "{not json")[0] == 2
    assert run(capsys, "convert", "--from", "string", "--to", "tree", "--a", "2", "0110")[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "transfer", "--a", "3..8", "--r", "12")
    summary = json.loads(out)
    assert code == 0 and summary["passed"] and summary["schema_version"] == 1
    code, out, _ = run(capsys, "verify", "--suite", "widths", "--a", "2", "--m", "6")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--suite", "theorem1", "--a", "2..3", "--m", "5")
    assert code == 0 and json.loads(out)["checks"] == 10


def test_verify_failure_exit(capsys, monkeypatch):
    from pyramids import checks

    monkeypatch.setitem(checks.SUITES, "series", lambda a, m, t: [checks.Check("series", "forced", False)])
    code, out, _ = run(capsys, "verify", "--suite", "series")
    assert code == 1 and json.loads(out)["failed"][0]["name"] == "forced"


def test_report_widths_and_plot(capsys, tmp_path):
    out_file = tmp_path / "w.csv"
    plot = tmp_path / "p.csv"
    code, _, _ = run(capsys, "report", "--kind", "widths", "--a", "2", "--M", "2000", "--step", "500",
                     "--out", str(out_file), "--plot-data", str(plot))
    assert code == 0
    last = out_file.read_text().splitlines()[-1].split(",")
    assert last[1] == "2000" and abs(float(last[-1]) - 1) < 0.05
    assert plot.read_text().startswith("x,y\n")


def test_report_lego(capsys):
    code, out, _ = run(capsys, "report", "--kind", "lego", "--a", "2..8", "--format", "json")
    rep = json.loads(out)
    assert code == 0 and len(rep["rows"]) == 7
    assert rep["columns"][3] == "conjecture"
    assert any("5.0012" in line for line in rep["context"])


def test_report_empty_range(capsys):
    code, out, _ = run(capsys, "report", "--kind", "counts", "--a", "5..4")
    assert code == 0 and out == "a,m,A_m,B_m,C_m\n"


def test_report_is_reproducible(capsys):
    args = ("report", "--kind", "lego", "--a", "2", "--samples", "20", "--mc-sizes", "3..6", "--seed", "4")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_report_bad_path(capsys):
    assert run(capsys, "report", "--out", "/nonexistent/dir/x.csv")[0] == 2


def test_bfile_and_transfer(capsys, tmp_path):
    code, out, _ = run(capsys, "bfile", "--a", "2", "--M", "5")
    assert out == "1 1\n2 3\n3 10\n4 35\n5 126\n"
    code, out, _ = run(capsys, "bfile", "--a", "3", "--M", "4", "--seq", "A")
    assert out.split("\n")[3] == "4 55"
    code, out, _ = run(capsys, "transfer", "--a", "3")
    assert json.loads(out)["matrices"]["index_order"] == ["0P", "0N", "1P", "1N"]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--a", "2", "--m", "3")
    assert len(out.splitlines()) == 10
    code, out, _ = run(capsys, "enumerate", "--a", "3", "--m", "2", "--format", "ascii", "--limit", "1")
    assert "[=]" in out


def test_mc(capsys):
    code, out, _ = run(capsys, "mc", "--a", "2", "--m", "4", "--samples", "30", "--seed", "2")
    obj = json.loads(out)
    assert obj["seed"] == 2 and obj["samples"] == 30


def test_parse_range():
    assert parse_range("2..5") == [2, 3, 4, 5]
    assert parse_range("2,4") == [2, 4]
    assert parse_range("5..4") == []


def test_help_lists_flags(capsys):
    with pytest.raises(SystemExit):
        main(["report", "--help"])
    out = capsys.readouterr().out
    for flag in ("--kind", "--format", "--out", "--plot-data", "--samples", "--seed"):
        assert flag in out
