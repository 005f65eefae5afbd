import json
import subprocess
import sys

import pytest

from epgraph.cli import run
from epgraph.graphs import enhanced_power_graph, proper_enhanced_power_graph, read_dot, read_edge_list
from epgraph.groups import build_group


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_info(capsys):
    code, out, _ = call(capsys, "info", "--group", "Z3xZ9xQ16")
    d = json.loads(out)
    assert code == 0
    assert d["order"] == 432 and d["profile"]["case"] == 3
    assert d["profile"]["sylows"]["2"]["kind"] == "GeneralizedQuaternion"
    assert d["profile"]["sylows"]["3"]["kind"] == "Other"


def test_bounds(capsys):
    code, out, _ = call(capsys, "bounds", "--group", "Z3xZ9xZ5xZ25xZ7xZ49xZ13")
    d = json.loads(out)
    assert code == 0 and d["alpha"] == 789
    assert d["beta"] == 741


def test_verify_exit_codes(capsys):
    code, out, _ = call(capsys, "verify", "--group", "Z2xZ4")
    assert code == 0 and json.loads(out)["all_match"] is True
    code, out, _ = call(capsys, "verify", "--group", "Q8")
    assert code == 0
    rows = {r["quantity"]: r for r in json.loads(out)["rows"]}
    assert rows["proper_connected"]["status"] == "anomaly"


def test_verify_mismatch_exit_code(capsys, monkeypatch):
    import epgraph.oracle as oracle
    real = oracle.predict_component_count
    monkeypatch.setattr(oracle, "predict_component_count", lambda p: (real(p) or 0) + 1)
    code, out, _ = call(capsys, "verify", "--group", "Z2xZ4")
    assert code == 3 and json.loads(out)["all_match"] is False


def test_usage_errors(capsys):
    code, _, err = call(capsys, "info", "--group", "Q12")
    assert code == 2 and "spec :=" in err
    code, _, err = call(capsys, "info")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        run(["info", "--group", "Z2", "--table", "x.json"])
    assert exc.value.code == 2
    code, _, _ = call(capsys, "info", "--group", "Z2", "--format", "dot")
    assert code == 2


def test_computation_errors(capsys, data_dir):
    code, _, err = call(capsys, "info", "--table", str(data_dir / "bad_row.json"))
    assert code == 1 and "permutation" in err
    code, _, _ = call(capsys, "info", "--group", "Z200xZ200")
    assert code == 1
    code, _, _ = call(capsys, "bounds", "--group", "Z12")
    assert code == 1
    code, _, _ = call(capsys, "kappa", "--group", "Z2xZ2xZ3xZ3xZ5", "--max-flow-n", "20")
    assert code == 1
    code, _, _ = call(capsys, "info", "--table", str(data_dir / "loop5.json"), "--check-assoc")
    assert code == 1


def test_table_input(capsys, data_dir):
    code, out, _ = call(capsys, "verify", "--table", str(data_dir / "s3.json"))
    d = json.loads(out)
    assert code == 0 and d["case"] == "NotNilpotent"
    code, out, _ = call(capsys, "dom", "--table", str(data_dir / "z4.json"))
    assert json.loads(out)["dom_size"] == 4


def test_graph_formats_round_trip(capsys, tmp_path):
    E = enhanced_power_graph(build_group("Q8xZ3"))
    code, out, _ = call(capsys, "graph", "--group", "Q8xZ3", "--format", "edges")
    assert code == 0 and read_edge_list(out, E.labels) == E
    code, out, _ = call(capsys, "graph", "--group", "Q8xZ3", "--format", "dot")
    assert read_dot(out) == E
    path = tmp_path / "g.json"
    code, out, _ = call(capsys, "graph", "--group", "Q8xZ3", "--out", str(path))
    assert out == ""
    d = json.loads(path.read_text())
    assert d["n"] == 24 and d["kind"] == "enhanced"
    assert {tuple(e) for e in d["edges"]} == E.edge_set()
    code, out, _ = call(capsys, "graph", "--group", "Z6", "--kind", "power", "--format", "text")
    assert out.startswith("Z6: 6 vertices, 13 edges")


def test_proper_export(capsys):
    P, _ = proper_enhanced_power_graph(build_group("Z2xZ2xZ3"))
    code, out, _ = call(capsys, "proper", "--group", "Z2xZ2xZ3", "--format", "edges")
    assert read_edge_list(out).edge_set() == P.edge_set()
    code, out, _ = call(capsys, "proper", "--group", "Z2xZ2xZ3")
    assert len(json.loads(out)["removed"]) == 3


def test_metrics_gamma_kappa_spectrum(capsys):
    code, out, _ = call(capsys, "metrics", "--group", "Z2xZ2xZ3xZ3")
    d = json.loads(out)
    assert d["diameter"] == 3 and d["component_count"] == 1 and d["domination_number"] == 3
    code, out, _ = call(capsys, "metrics", "--group", "Z2xZ2", "--whole")
    d = json.loads(out)
    assert d["dom_vertices"] == ["(0,0)"] and d["vertex_connectivity"] == 1
    code, out, _ = call(capsys, "gamma", "--group", "Z2xZ4")
    assert json.loads(out)["domination_number"] == 3
    code, out, _ = call(capsys, "gamma", "--group", "Z7")
    assert json.loads(out)["domination_number"] == 0
    code, out, _ = call(capsys, "kappa", "--group", "Z2xZ2xZ3")
    d = json.loads(out)
    assert d["vertex_connectivity"] == 3 and d["predicted"] == {"exactly": 3}
    code, out, _ = call(capsys, "spectrum", "--group", "Z2xZ2xZ5")
    d = json.loads(out)
    assert d["eta_lambda1"] == 5 and d["mult_of_n"] == 5
    code, out2, _ = call(capsys, "spectrum", "--group", "Z2xZ2xZ5", "--method", "lapack")
    assert json.loads(out2)["eta_lambda1"] == 5


def test_text_format(capsys):
    code, out, _ = call(capsys, "verify", "--group", "Z2xZ2xZ3", "--format", "text")
    assert code == 0 and "all_match: True" in out


def test_sweep(capsys):
    code, out, err = call(capsys, "sweep", "--family", "abelian-p:2:32")
    d = json.loads(out)
    assert code == 0
    assert d["summary"]["groups"] == 13 and d["summary"]["mismatched_groups"] == 0
    assert "13 groups" in err
    code, out, _ = call(capsys, "sweep", "--family", "pool:Q8,Q16:16")
    d = json.loads(out)
    assert d["summary"]["anomalous_groups"] == 2 and code == 0
    code, out, _ = call(capsys, "sweep", "--family", "pool:Z2,Z3,Z5:60", "--sample", "5",
                        "--seed", "4")
    assert json.loads(out)["summary"]["groups"] == 5
    code, _, _ = call(capsys, "sweep", "--family", "bogus")
    assert code == 2


def test_sweep_records_errors(capsys):
    code, out, _ = call(capsys, "sweep", "--family", "pool:Z2,Z3:12", "--max-order", "5")
    d = json.loads(out)
    assert code == 0
    errored = [r["group"] for r in d["reports"] if "error" in r]
    assert sorted(errored) == ["Z2xZ2xZ2", "Z2xZ2xZ3", "Z2xZ3", "Z3xZ3"]
    code, out, _ = call(capsys, "sweep", "--family", "abelian-p:3:27", "--max-order", "10")
    d = json.loads(out)
    assert d["summary"]["errors"] == 2
    assert all("error" in r for r in d["reports"] if r["group"] != "Z3xZ3")


@pytest.mark.parametrize("argv", [
    ["verify", "--group", "Z3xZ3xZ5xQ8"],
    ["info", "--group", "D16xZ3"],
    ["sweep", "--family", "pool:Z2,Z4,Z3:48"],
    ["spectrum", "--group", "Z2xZ4xZ3"],
])
def test_output_is_byte_identical(argv):
    cmd = [sys.executable, "-m", "epgraph", *argv]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_console_script():
    res = subprocess.run(["epg", "bounds", "--group", "Z2xZ2xZ3xZ3"], capture_output=True,
                         text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout) == {"group": "Z2xZ2xZ3xZ3", "alpha": 4, "beta": 4}
