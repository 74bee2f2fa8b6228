from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from symbreak.cli import run
from symbreak.constructions import cycle_power_coloring
from symbreak.graph import TwoColoring, generate
from symbreak.kn import kn_table, procedure1, table_csv
from symbreak.product import parse_product_spec
from symbreak.reduced import aul_check
from symbreak.search import exact_cost
from symbreak.symmetry import automorphism_group
from symbreak.trees import DATA_DIR


def call(*argv: str) -> tuple[int, str]:
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_check_three_edge_q3_coloring():
    code, text = call("check", "--graph", "Q3", "--mode", "edge", "--red", "000-100,100-110,011-111")
    assert code == 0 and json.loads(text)["distinguishing"] is True


def test_check_negative_verdict():
    code, text = call("check", "--graph", "Q3", "--mode", "edge", "--red", "000-100,100-110")
    assert code == 1 and json.loads(text)["distinguishing"] is False


def test_cost_c6():
    code, text = call("cost", "--graph", "C6", "--mode", "edge")
    data = json.loads(text)
    assert code == 0 and data["value"] == 3 and data["refuted_below"]
    assert text.strip() == exact_cost(generate("cycle", 6), "edge", graph_spec="C6").to_json()


def test_kn_table_matches_golden_and_library(cat13):
    code, text = call("kn-table", "--from", "6", "--to", "630")
    assert code == 0 and len(text.splitlines()) == 626
    assert text == (DATA_DIR / "kn_table_6_630.csv").read_text()
    assert text == table_csv(kn_table(6, 630, cat13))


def test_kn_table_runs_and_depth():
    code, text = call("kn-table", "--from", "6", "--to", "20", "--format", "runs", "--depth", "12")
    assert code == 0 and text.splitlines()[0] == "6..7\t6"
    assert call("kn-table", "--from", "6", "--to", "620", "--depth", "12")[0] == 2


def test_kn_cost():
    code, text = call("kn-cost", "--n", "16")
    assert code == 0 and json.loads(text) == {"n": 16, "rho_prime": 13, "N": 8, "w": 0, "r": 0}


def test_procedure1_formats(cat13):
    code, text = call("procedure1", "--n", "16")
    assert code == 0 and text.strip() == procedure1(16, cat13).to_json()
    code, dot = call("procedure1", "--n", "9", "--format", "dot")
    assert code == 0 and dot.count("[color=red]") == 7


def test_aut_matches_library():
    code, text = call("aut", "--graph", "C5*C6")
    grp = automorphism_group(parse_product_spec("C5*C6").graph)
    assert code == 0 and json.loads(text)["order"] == grp.order == 120
    assert json.loads(text)["generators"] == [list(p) for p in grp.generators]


def test_aut_budget_exit_code():
    assert call("aut", "--graph", "K8", "--node-budget", "3")[0] == 3


def test_graph_inputs(tmp_path):
    f = tmp_path / "k4.txt"
    f.write_text("4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    a = json.loads(call("aut", "--edges-file", str(f))[1])
    b = json.loads(call("aut", "--g6", "C~")[1])
    assert a["order"] == b["order"] == 24
    assert call("aut", "--edges-file", str(tmp_path / "missing.txt"))[0] == 2


@pytest.mark.parametrize("argv", [
    ["aut", "--graph", "X9"],
    ["aut", "--g6", "C"],
    ["check", "--graph", "Q3", "--mode", "edge", "--red", "000-011"],
    ["check", "--graph", "Q3", "--mode", "vertex", "--red", "000-100"],
    ["construct", "cycle-power", "--n", "5", "--k", "4", "--mode", "vertex"],
    ["bogus"],
    [],
])
def test_usage_errors_exit_2(argv):
    assert call(*argv)[0] == 2


def test_cost_budget_exit_code():
    code, text = call("cost", "--graph", "K7", "--mode", "edge", "--budget", "20")
    assert code == 3 and json.loads(text)["status"] == "budget"


def test_construct_matches_library():
    code, text = call("construct", "cycle-power", "--n", "6", "--k", "2", "--mode", "vertex")
    assert code == 0 and text.strip() == cycle_power_coloring(6, 2, "vertex").to_json()
    code, dot = call("construct", "small-hypercube", "--k", "3", "--format", "dot")
    assert dot.count("[color=red]") == 3


def test_aul_and_fallback(capsys):
    code, text = call("aul", "--graph", "P5^3", "--mode", "edge", "--red", "001-101")
    pg = parse_product_spec("P5^3")
    lib = json.loads(aul_check(pg, TwoColoring.edges([(pg.index((0, 0, 1)), pg.index((1, 0, 1)))])).to_json())
    assert code == 0 and json.loads(text) == lib and lib["satisfied"]
    code, text = call("aul", "--graph", "Q3", "--mode", "edge", "--red", "000-100,100-110,011-111")
    data = json.loads(text)
    assert code == 0 and not data["satisfied"] and data["exact_distinguishing"]
    assert "falling back" in capsys.readouterr().err


def test_reduced_factor_and_factorize():
    code, text = call("reduced-factor", "--graph", "P5^2", "--mode", "vertex", "--red", "00", "--factor", "0")
    colors = json.loads(text)["vertex_colors"]
    assert code == 0 and len(set(colors)) == 2 and colors.count(colors[0]) == 1
    code, text = call("factorize", "--g6", "C]")
    data = json.loads(text)
    assert code == 0 and not data["prime"] and [f["order"] for f in data["factors"]] == [2, 2]


def test_det_set_and_trees_and_catalog():
    data = json.loads(call("det-set", "--graph", "Q4")[1])
    assert data["size"] == 3 and data["minimum"]
    data = json.loads(call("trees", "--order", "9", "--asymmetric")[1])
    assert data["count"] == 3
    data = json.loads(call("catalog", "--max-order", "9")[1])
    assert data["counts"]["9"] == 3


def test_render():
    code, dot = call("render", "--graph", "P3", "--mode", "vertex", "--red", "0")
    assert code == 0 and "0 [color=red]" in dot


def test_output_is_byte_stable():
    argv = ["cost", "--graph", "Q3", "--mode", "edge"]
    assert call(*argv) == call(*argv)
    argv = ["construct", "hypercube-class", "--n", "5"]
    assert call(*argv) == call(*argv)


def test_workers_flag_does_not_change_output():
    assert call("--workers", "1", "cost", "--graph", "C5*C6")[1] == call("--workers", "3", "cost", "--graph", "C5*C6")[1]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symbreak", "kn-cost", "--n", "100"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["rho_prime"] == 89
