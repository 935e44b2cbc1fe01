import csv
import subprocess
import sys

import pytest

from mrhsglue.cli import main
from mrhsglue.formats import load_family, load_system


SOLVABLE_SEED = 1


def run(*argv):
    return main([str(a) for a in argv])


def test_gen_vandermonde(tmp_path):
    out = tmp_path / "v.fam"
    assert run("gen", "vandermonde", "--n", 4, "--t", 2, "--out", out) == 0
    text = out.read_text()
    assert "\nq 11\n" in text
    assert load_family(str(out)).m == 4


def test_gen_thm10(tmp_path):
    out = tmp_path / "h.fam"
    assert run("gen", "thm10", "--n", 5, "--seed", 7, "--out", out) == 0
    fam = load_family(str(out))
    assert fam.m == 15 and fam.n == 15


def test_gen_gv_reports_verification(tmp_path, capsys):
    out = tmp_path / "g.fam"
    assert run("gen", "gv", "--n", 12, "--d", 5, "--seed", 1, "--out", out) == 0
    assert "exhaustive check passed" in capsys.readouterr().out
    assert load_family(str(out)).m == 12


def test_deficit_exact_vandermonde(tmp_path, capsys):
    out = tmp_path / "v.fam"
    run("gen", "vandermonde", "--n", 4, "--t", 2, "--out", out)
    capsys.readouterr()
    assert run("deficit", out) == 0
    text = capsys.readouterr().out
    assert "max deficit 2" in text or "max_deficit 2" in text


def test_deficit_greedy_not_below_exact(tmp_path, capsys):
    out = tmp_path / "r.fam"
    run("gen", "random", "--n", 7, "--m", 7, "--t", 3, "--q", 2, "--seed", 3, "--out", out)
    values = {}
    for strat in ("exact", "greedy"):
        csv_path = tmp_path / f"{strat}.csv"
        assert run("deficit", out, "--strategy", strat, "--csv", csv_path) == 0
        rows = list(csv.DictReader(csv_path.open()))
        values[strat] = max(int(r["deficit"]) for r in rows)
    assert values["greedy"] >= values["exact"]
    assert values["exact"] <= 7 - 3


def test_solve_verify_and_orders(tmp_path, capsys):
    out = tmp_path / "s.mrhs"
    run("gen", "random", "--n", 6, "--m", 4, "--t", 3, "--q", 2, "--seed", SOLVABLE_SEED, "--system", "--out", out)
    capsys.readouterr()
    assert run("solve", out, "--verify", "brute") == 0
    assert "OK" in capsys.readouterr().out
    sols = {}
    for order in ("exact", "random"):
        assert run("solve", out, "--order", order, "--seed", 2) == 0
        text = capsys.readouterr().out
        lines = text.splitlines()
        at = next(i for i, l in enumerate(lines) if l.startswith("solutions "))
        sols[order] = lines[at + 1:at + 1 + int(lines[at].split()[1])]
    assert sols["exact"] == sols["random"]
    assert len(sols["exact"]) > 0


def test_solve_single_equation(tmp_path, capsys):
    out = tmp_path / "one.mrhs"
    out.write_text("MRHS 1\nq 2\nn 2\nm 1\neq 1 1\n1 1\n1\n")
    trace = tmp_path / "t.csv"
    assert run("solve", out, "--trace-csv", trace) == 0
    rows = list(csv.DictReader(trace.open()))
    assert rows == []


def test_simulate_vandermonde_excess(tmp_path):
    out = tmp_path / "sim.csv"
    assert run("simulate", "--gen", "vandermonde", "--n", 6, "--t", 2, "--trials", 3,
               "--seed", 1, "--csv", out) == 0
    rows = list(csv.DictReader(out.open()))
    assert all(r["max_excess"] == "3" for r in rows)
    assert rows[-1]["trial"] == "summary"


def test_exit_codes(tmp_path, capsys):
    assert run("deficit", tmp_path / "missing.fam") == 2
    bad = tmp_path / "bad.fam"
    bad.write_text("FAM 1\nq 4\n")
    assert run("deficit", bad) == 2
    assert "line 2" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        run("simulate", "--gen", "random")
    assert info.value.code == 2


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "mrhsglue", "gen", "thm10", "--n", "2", "--seed", "1"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.startswith("FAM 1")
