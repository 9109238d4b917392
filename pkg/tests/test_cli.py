import json
from pathlib import Path

import pytest
from click.testing import CliRunner

from koszulkit.cli import main, presentation_to_json
from koszulkit.fixtures import FIXTURES, fixture

ROOT = Path(__file__).resolve().parent.parent
FIXDIR = ROOT / "fixtures"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args], catch_exceptions=False)


def write(tmp_path, doc, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc, indent=2))
    return path


def rel(*pairs):
    return {"terms": [{"coeff": c, "word": w} for c, w in pairs]}


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_shipped_fixture_files_match_builders(name):
    doc = json.loads((FIXDIR / f"{name}.json").read_text())
    assert doc == presentation_to_json(fixture(name))


def test_check_reports_degrees():
    r = run("check", FIXDIR / "atilde-4-5.json", "--no-timing")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    assert (doc["result"]["a"], doc["result"]["b"]) == (4, 5)
    assert set(doc) == {"command", "fixture_hash", "field", "bounds", "result", "elapsed_ms"}
    assert doc["elapsed_ms"] is None


def test_fixture_name_resolves_without_file():
    doc = json.loads(run("check", "downup-quotient", "--no-timing").output)
    assert (doc["result"]["a"], doc["result"]["b"]) == (3, 4)


def test_three_degrees_exit_2(tmp_path):
    path = write(tmp_path, {"generators": ["x", "y"], "relations": [rel(("1", "xx")), rel(("1", "yyy")), rel(("1", "xyxyx"))]})
    r = run("check", path)
    assert r.exit_code == 2
    assert "homogeneous" in r.output


def test_bad_coefficient_reports_line(tmp_path):
    path = write(tmp_path, {"generators": ["x", "y"], "relations": [rel(("1", "xx")), rel(("1/0x", "yyy"))]})
    r = run("check", path)
    assert r.exit_code == 2
    assert "relation 1, term 0" in r.output and "line" in r.output


def test_invalid_json_exit_2(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\n  \"generators\": [\n")
    assert run("check", path).exit_code == 2


def test_unknown_source_exit_2():
    assert run("check", "no-such-thing").exit_code == 2


def test_expect_mismatch_exit_4():
    r = run("koszul", "downup-quotient", "--max-degree", 8, "--max-i", 4, "--expect", "koszul", "--no-timing")
    assert r.exit_code == 4
    assert json.loads(r.output)["result"]["overall"] == "not-koszul"


def test_expect_match_exit_0():
    r = run("koszul", "atilde-4-5", "--max-degree", 9, "--max-i", 4, "--expect", "koszul")
    assert r.exit_code == 0


def test_nonexclusive_exit_3(tmp_path):
    path = write(tmp_path, {"generators": ["x", "y"], "relations": [rel(("1", "xx")), rel(("1", "xxy"))]})
    r = run("koszul", path, "--max-degree", 6, "--max-i", 3)
    assert r.exit_code == 3


def test_budget_exit_5():
    r = run("koszul", "atilde-4-5", "--max-degree", 10, "--max-ambient-dim", 16)
    assert r.exit_code == 5


def test_necklace_command():
    assert run("necklace", "predim2", 9).output.strip() == "12"
    assert run("necklace", "predim0", 8, 4, 5).output.strip() == "7"
    assert run("necklace", "rho", 4).output.strip() == "6"
    assert run("necklace", "predim2", 4).exit_code == 2
    assert run("necklace", "predim0", 8).exit_code == 2


def test_hh_csv():
    r = run("hh", "atilde-4-5", "--max-degree", 8, "--max-i", 2, "--format", "csv")
    lines = r.output.strip().splitlines()
    assert lines[0] == "n,HH_0,HH_1,HH_2"
    assert [int(l.split(",")[1]) for l in lines[1:]] == [1, 2, 3, 4, 5, 5, 8, 8, 12]


def test_hh_warns_for_non_koszul_input():
    r = run("hh", "downup-quotient", "--max-degree", 7, "--max-i", 2)
    assert r.exit_code == 0
    assert "warning" in r.stderr


def test_output_is_deterministic_without_timing():
    args = ("koszul", "evc-asymmetry", "--max-degree", 8, "--max-i", 4, "--strategy", "both", "--no-timing")
    assert run(*args).output == run(*args).output


def test_threads_are_recorded(monkeypatch):
    monkeypatch.setenv("KOSZULKIT_THREADS", "3")
    doc = json.loads(run("check", "atilde-4-5").output)
    assert doc["result"]["threads"] == 3


def test_opposite_twice_round_trips(tmp_path):
    once = tmp_path / "once.json"
    twice = tmp_path / "twice.json"
    assert run("opposite", "evc-asymmetry", "-o", once).exit_code == 0
    assert run("opposite", once, "-o", twice).exit_code == 0
    assert json.loads(twice.read_text()) == presentation_to_json(fixture("evc-asymmetry"))
    assert json.loads(once.read_text()) != json.loads(twice.read_text())


def test_dual_command(tmp_path):
    out = tmp_path / "dual.json"
    assert run("dual", "dual-nonexclusive", "-o", out).exit_code == 0
    doc = json.loads(out.read_text())
    assert doc["generators"] == ["x*", "y*"]
    r = run("check", out)
    assert r.exit_code == 0
    verdict = json.loads(r.output)["result"]["conditions"][0]["verdict"]
    assert verdict == "fails"


def test_dual_without_relations_exit_3(tmp_path):
    path = write(tmp_path, {"generators": ["x"], "relations": [rel(("1", "xx")), rel(("1", "xxx"))]})
    assert run("dual", path).exit_code == 3


def test_field_override():
    doc = json.loads(run("check", "atilde-4-5", "--field", "GF:32003", "--no-timing").output)
    assert doc["field"] == "GF:32003"
    assert run("check", "atilde-4-5", "--field", "GF:9").exit_code == 2
