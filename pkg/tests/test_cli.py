import json
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import solver_available
from isocurve.cli import ENVIRONMENT, INVALID, NEGATIVE, OK, main

DATA = Path(__file__).parent / "data"
FIG8 = str(DATA / "fig8.json")
BOWTIE = str(DATA / "bowtie.json")
WIRING3 = str(DATA / "wiring3.json")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def test_isotopic(capsys):
    code, out, _ = run(capsys, "isotopic", "--polygon", BOWTIE, "--curve", FIG8)
    assert code == OK
    assert json.loads(out) == {"isotopic": True}


def test_not_isotopic(capsys, tmp_path):
    mirror = write(tmp_path, "m.json", {"n": 1, "twin": [2, 1], "sign": [1, -1]})
    code, out, _ = run(capsys, "isotopic", "--polygon", BOWTIE, "--curve", mirror)
    assert code == NEGATIVE and json.loads(out) == {"isotopic": False}


def test_validate_code(capsys, tmp_path):
    assert run(capsys, "validate-code", "--curve", FIG8)[0] == OK
    bad = write(tmp_path, "bad.json", {"n": 2, "twin": [3, 4, 1, 2], "sign": [1, 1, -1, -1]})
    code, out, _ = run(capsys, "validate-code", "--curve", bad)
    assert code == NEGATIVE and json.loads(out)["parity"] is False


def test_equiv_codes(capsys):
    code, out, _ = run(capsys, "equiv-codes", "--curve", FIG8)
    assert code == OK
    assert json.loads(out) == {"count": 1, "codes": [{"n": 1, "twin": [2, 1], "sign": [-1, 1]}]}


def test_check_generic(capsys, tmp_path):
    assert run(capsys, "check-generic", "--polygon", BOWTIE)[0] == OK
    sq = write(tmp_path, "sq.json", {"vertices": [[0, 0], [1, 0], [1, 1], [0, 1]]})
    assert run(capsys, "check-generic", "--polygon", sq)[0] == NEGATIVE


def test_extract_codes(capsys):
    code, out, _ = run(capsys, "extract-codes", "--polygon", BOWTIE)
    assert code == OK
    exs = json.loads(out)["extractions"]
    assert exs and all(e["code"]["twin"] == [2, 1] for e in exs)


def test_emit_matches_golden_file(capsys):
    code, out, _ = run(capsys, "emit", "--curve", FIG8, "--m", "4", "--dialect", "smt2")
    assert code == OK
    assert out == (DATA / "fig8_m4.smt2").read_text()


def test_emit_to_file_and_infix(capsys, tmp_path):
    target = tmp_path / "s.txt"
    assert run(capsys, "emit", "--curve", FIG8, "--m", "4", "--dialect", "infix", "--out", str(target))[0] == OK
    assert target.read_text().startswith("exists ")


def test_stats(capsys):
    code, out, _ = run(capsys, "stats", "--curve", FIG8, "--m", "4")
    assert code == OK
    s = json.loads(out)
    assert s["max_degree"] == 4 and s["variables"] == 20


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--wiring", WIRING3)
    assert code == OK and json.loads(out)["n"] == 9
    code, out, _ = run(capsys, "reduce", "--ringel")
    assert code == OK and json.loads(out)["n"] == 54


def test_reduce_even_needs_padding(capsys, tmp_path):
    w2 = write(tmp_path, "w2.json", {"n": 2, "swaps": [1]})
    assert run(capsys, "reduce", "--wiring", w2)[0] == INVALID
    code, out, _ = run(capsys, "reduce", "--wiring", w2, "--pad")
    assert code == OK and json.loads(out)["n"] == 3 + 6


def test_staple(capsys, tmp_path):
    lines = write(tmp_path, "l.json", {"lines": [["-1/2", "1/8"], ["0", "0"], ["1/2", "-1/16"]]})
    code, out, _ = run(capsys, "staple", "--lines", lines)
    assert code == OK
    res = json.loads(out)
    assert len(res["polygon"]["vertices"]) == 12 and res["code"]["n"] == 9


def test_concurrent_lines_are_invalid(capsys, tmp_path):
    lines = write(tmp_path, "l.json", {"lines": [["-1/2", "1/8"], ["0", "0"], ["1/2", "-1/8"]]})
    assert run(capsys, "staple", "--lines", lines)[0] == INVALID


def test_straighten(capsys):
    code, out, _ = run(capsys, "straighten", "--curve", FIG8)
    assert code == OK
    res = json.loads(out)
    assert res["verified"] and res["vertex_count"] <= 6


def test_min_search_without_solver(capsys):
    code, out, err = run(capsys, "min-search", "--curve", FIG8, "--m-max", "4", "--solver", "/nonexistent/z3")
    assert code == ENVIRONMENT
    assert json.loads(out)["solver_available"] is False
    assert "unavailable" in err


def test_render_svg(capsys):
    code, out, _ = run(capsys, "render-svg", "--wiring", WIRING3)
    assert code == OK and out.startswith("<?xml")
    assert run(capsys, "render-svg")[0] == INVALID


@pytest.mark.parametrize(
    "argv",
    [
        ["isotopic", "--polygon", "/nonexistent.json", "--curve", FIG8],
        ["emit", "--curve", FIG8, "--m", "2"],
        ["reduce"],
    ],
)
def test_invalid_inputs(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == INVALID and err.startswith("error:")


def test_malformed_json(capsys, tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    assert run(capsys, "validate-code", "--curve", str(p))[0] == INVALID


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "isocurve.cli", "isotopic", "--polygon", BOWTIE, "--curve", FIG8],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and json.loads(res.stdout) == {"isotopic": True}


@pytest.mark.solver
@pytest.mark.skipif(not solver_available(), reason="no SMT solver configured")
def test_min_search_with_solver(capsys):
    code, out, _ = run(capsys, "min-search", "--curve", FIG8, "--m-max", "5")
    assert code == OK
    assert json.loads(out)["best_m"] == 4
