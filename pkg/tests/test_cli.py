import csv
import json
from fractions import Fraction as F


from dofbc.cli import (
    main,
    region_document,
    region_from_json,
    simulate_document,
    sweep_k_rows,
    sweep_n2_rows,
)
from dofbc.config import SystemConfig
from dofbc.region import region_constraints


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_region_command_json(capsys):
    code, out, _ = run_cli(capsys, "region", "4", "1", "3", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["vertices"] == [["0", "0"], ["1", "0"], ["1", "5/2"], ["0", "3"]]
    assert {"a1": "1", "a2": "2", "b": "6"} in doc["constraints"]
    assert doc["sum_dof_lower"] == "7/2"


def test_region_round_trip():
    doc = region_document(4, 1, 3, 2)
    parsed = region_from_json(json.loads(json.dumps(doc)))
    assert parsed.constraints == region_constraints(SystemConfig(4, 1, 3, 2)).constraints
    assert parsed.vertices == region_constraints(SystemConfig(4, 1, 3, 2)).vertices


def test_region_unswaps_axes():
    doc = region_document(9, 6, 3, 4)  # caller lists the larger receiver first
    assert doc["config"]["swapped"] is True
    plain = region_document(9, 3, 6, 4)
    assert sorted(map(tuple, doc["vertices"])) == sorted(
        (d2, d1) for d1, d2 in map(tuple, plain["vertices"])
    )


def test_region_k3_outer_matches_full_csit(capsys):
    code, out, _ = run_cli(capsys, "region", "4", "1", "3", "3")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["constraints"]) == 3
    assert doc["vertices"] == [["0", "0"], ["1", "0"], ["1", "3"], ["0", "3"]]


def test_invalid_config_exits_2(capsys):
    code, _, err = run_cli(capsys, "region", "4", "1", "3", "5")
    assert code == 2
    assert "invalid" in err


def test_sweep_k_values():
    rows = sweep_k_rows(9, 6, 3)
    assert rows[3]["upper"] == "15/2" and rows[3]["lower"] == "15/2"
    assert rows[0]["upper"] == "7" and rows[0]["lower"] == "6"
    assert rows[0]["pd_reference"] == "7"
    uppers = [F(r["upper"]) for r in rows]
    lowers = [F(r["lower"]) for r in rows]
    assert uppers == sorted(uppers) and lowers == sorted(lowers)


def test_sweep_n2_values():
    rows = {r["N2"]: r for r in sweep_n2_rows(20, 12)}
    assert rows[16]["upper"] == "18" and rows[16]["lower"] == "18"
    assert rows[12]["upper"] == "20"
    assert rows[13]["upper"] == str(F(13) + F(49, 8))


def test_sweep_csv_format(capsys):
    code, out, _ = run_cli(capsys, "sweep-k", "9", "6", "3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(out.splitlines()))
    assert rows[6]["upper"] == "9" and rows[6]["lower"] == "9"


def test_simulate_document_and_exit(capsys):
    code, out, _ = run_cli(capsys, "simulate", "4", "1", "3", "2", "--trials", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["scheme"] == "mid-k"
    assert (doc["S1"], doc["S2"], doc["T"]) == (2, 5, 2)
    assert doc["claimed_dof"] == doc["certified_dof"] == "7/2"
    assert doc["compliance"]["compliant"] is True
    assert doc["slope"] is None


def test_simulate_special_case_table1(capsys):
    code, out, _ = run_cli(capsys, "simulate", "6", "3", "3", "1", "--trials", "5", "--special-cases")
    doc = json.loads(out)
    assert code == 0
    assert doc["scheme"] == "table1"
    assert doc["certified_dof"] == "4"


def test_simulate_small_system(capsys):
    code, out, _ = run_cli(capsys, "simulate", "2", "1", "3", "0", "--trials", "5")
    doc = json.loads(out)
    assert code == 0
    assert doc["certified_dof"] == "2"


def test_simulate_with_slope():
    doc = simulate_document(4, 1, 3, 2, trials=30, seed=1, snr_db=(40.0, 60.0, 80.0))
    assert abs(doc["slope"]["slope"] - 3.5) <= 0.15


def test_figure_files(tmp_path, capsys):
    for name in ("fig2", "fig3", "fig4"):
        code, out, _ = run_cli(capsys, "figure", name, "--out", str(tmp_path))
        assert code == 0
        path = tmp_path / f"{name}.csv"
        assert path.exists()
    fig2 = list(csv.DictReader((tmp_path / "fig2.csv").read_text().splitlines()))
    assert fig2[6]["upper_exact"] == "9" and fig2[6]["lower_exact"] == "9"
    for column in ("upper_exact", "lower_exact"):
        values = [F(r[column]) for r in fig2]
        assert values == sorted(values)
    fig3 = list(csv.DictReader((tmp_path / "fig3.csv").read_text().splitlines()))
    k1 = [r for r in fig3 if r["k"] == "1"]
    assert ["7/3" == r["d2_exact"] for r in k1 if r["d1_exact"] == "1"]
    fig4 = list(csv.DictReader((tmp_path / "fig4.csv").read_text().splitlines()))
    assert fig4[2]["upper_exact"] == "20"  # N2 = 12


def test_figure_certify(tmp_path, capsys):
    code, out, err = run_cli(
        capsys, "figure", "fig3", "--out", str(tmp_path), "--certify", "--trials", "3"
    )
    assert code == 0, err


def test_output_file(tmp_path, capsys):
    out_file = tmp_path / "region.json"
    code, _, _ = run_cli(capsys, "region", "4", "1", "3", "0", "--out", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    assert doc["vertices"][2] == ["1", "9/4"]
