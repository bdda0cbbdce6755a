import json

import pytest
from typer.testing import CliRunner

from src.ingestion.loader import save_window
from src.main import app, main
from src.natwin.window import WindowSet

runner = CliRunner()


@pytest.fixture
def rz3_file(tmp_path):
    path = tmp_path / "rz3.txt"
    path.write_text("3\n0 1 2\n0 1 2\n0 1 2\n")
    return path


@pytest.fixture
def evens_file(tmp_path):
    path = tmp_path / "evens.rle"
    save_window(WindowSet.evens(100), path)
    return path


def test_validate_ok(rz3_file):
    result = runner.invoke(app, ["validate", str(rz3_file)])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"ok": True, "violation": None}


def test_validate_violation(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 0\n0 0\n")
    result = runner.invoke(app, ["validate", str(path)])
    assert result.exit_code == 1
    assert json.loads(result.stdout)["violation"] == [0, 0, 1]


def test_classify(rz3_file, tmp_path):
    result = runner.invoke(app, ["classify", str(rz3_file), "--set", "0,2", "--notion", "thick"])
    assert result.exit_code == 0
    assert json.loads(result.stdout) == {"notion": "thick", "set": [0, 2], "member": True}

    fam = tmp_path / "f.json"
    fam.write_text("[[0]]")
    result = runner.invoke(app, ["classify", str(rz3_file), "--set", "0", "--notion", "rel-syn",
                                 "--filter-f", str(fam), "--filter-g", str(fam)])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["member"] is True


def test_classify_szz_reports_point(rz3_file):
    result = runner.invoke(app, ["classify", str(rz3_file), "--set", "1", "--notion", "szz-ps"])
    assert result.exit_code == 0
    out = json.loads(result.stdout)
    assert out["member"] is True and out["y"] == 1


@pytest.mark.parametrize("notion", ["syndetic", "thick", "ps"])
def test_classify_classical_notions_above_family_cap(tmp_path, notion):
    path = tmp_path / "null8.txt"
    path.write_text("8\n" + "0 0 0 0 0 0 0 0\n" * 8)
    result = runner.invoke(app, ["classify", str(path), "--set", "0", "--notion", notion])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["member"] is True


def test_classify_rejects_out_of_range_element(rz3_file):
    result = runner.invoke(app, ["classify", str(rz3_file), "--set", "0,7", "--notion", "ps"])
    assert result.exit_code == 2


def test_families(rz3_file):
    result = runner.invoke(app, ["families", str(rz3_file)])
    assert result.exit_code == 0
    out = json.loads(result.stdout)
    assert out["syn"] == [[0, 1, 2]]
    assert len(out["thick"]) == 7 and out["relative"] is False


def test_check_order_2(tmp_path):
    out = tmp_path / "report.jsonl"
    result = runner.invoke(app, ["check", "--max-order", "2", "--claims", "all", "--out", str(out), "--stable"])
    assert result.exit_code == 0
    summary = json.loads(result.stdout)
    assert summary["exit_status"] == 0 and "meta" not in summary
    lines = out.read_text().splitlines()
    assert len(lines) == summary["reports"]
    assert "elapsed" not in json.loads(lines[0])


def test_check_is_byte_stable(tmp_path):
    args = ["check", "--max-order", "1", "--claims", "T1_4,C2_6", "--stable"]
    assert runner.invoke(app, args).stdout == runner.invoke(app, args).stdout


def test_check_profile_names_the_run(tmp_path):
    prof = tmp_path / "suite.prof.txt"
    result = runner.invoke(app, ["check", "--max-order", "1", "--claims", "T1_4", "--jobs", "1",
                                 "--profile", str(prof)])
    assert result.exit_code == 0
    lines = prof.read_text().splitlines()
    assert lines[0] == "# suite max_order=1 dedupe=none claims=T1_4 jobs=1"
    assert lines[1].endswith(" calls")


def test_check_bad_config_exits_2():
    result = runner.invoke(app, ["check", "--max-order", "4"])
    assert result.exit_code == 2


def test_enumerate(tmp_path):
    out = tmp_path / "t.jsonl"
    result = runner.invoke(app, ["enumerate", "--order", "2", "--out", str(out)])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["count"] == 8
    assert len(out.read_text().splitlines()) == 8


def test_search(tmp_path):
    out = tmp_path / "search.json"
    result = runner.invoke(app, ["search-q46", "--max-order", "2", "--budget", "0", "--out", str(out)])
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    assert report["outcome"] == "none_found" and report["partial"] is True


def test_natwin_ap(evens_file):
    result = runner.invoke(app, ["natwin", "--in", str(evens_file), "--op", "ap", "--k", "5"])
    assert result.exit_code == 0
    assert result.stdout.strip() == '{"a":2,"d":2}'


def test_natwin_ops(evens_file, tmp_path):
    gap = json.loads(runner.invoke(app, ["natwin", "--in", str(evens_file), "--op", "gap-bound"]).stdout)
    assert gap["b"] == 2
    runs = json.loads(runner.invoke(app, ["natwin", "--in", str(evens_file), "--op", "runs"]).stdout)
    assert runs["max_run"] == 1
    ps = json.loads(runner.invoke(app, ["natwin", "--in", str(evens_file), "--op", "ps-witness",
                                        "--b", "2", "--L", "50"]).stdout)
    assert ps["interval"] == [1, 50]
    probe = json.loads(runner.invoke(app, ["natwin", "--in", str(evens_file), "--op", "example-3-4",
                                           "--m", "10"]).stdout)
    assert probe["passed"] is True
    other = tmp_path / "odds.bin"
    save_window(WindowSet.odds(100), other)
    emb = json.loads(runner.invoke(app, ["natwin", "--in", str(evens_file), "--op", "embed",
                                         "--other", str(other), "--m", "4"]).stdout)
    assert emb["embeddable"] is True and emb["shift"] == 1


def test_natwin_missing_parameter(evens_file):
    result = runner.invoke(app, ["natwin", "--in", str(evens_file), "--op", "ap"])
    assert result.exit_code == 2


def test_main_exit_codes(rz3_file, capsys):
    assert main(["validate", str(rz3_file)]) == 0
    assert main(["validate", str(rz3_file), "--bogus"]) == 2
    assert main(["validate", "/no/such/table.txt"]) == 2
    err = capsys.readouterr().err
    assert "no/such/table.txt" in err
