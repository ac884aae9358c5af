import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from sqconc import cli
from sqconc.cli import RECORD_SCHEMA, REPORT_SCHEMA, RunConfig, main
from sqconc.records import CSV_FIELDS, MeasureRecord


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_sweep_csv_to_stdout(capsys):
    assert main(["sweep", "--state", "werner", "--steps", "3"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",".join(CSV_FIELDS)
    rows = rows_of(out)
    assert len(rows) == 6
    assert rows[-1]["gamma"] == "1" and float(rows[-1]["value"]) == pytest.approx(1, abs=1e-9)


def test_sweep_records_round_trip(tmp_path):
    path = tmp_path / "s.csv"
    assert main(["sweep", "--axis", "jt", "--steps", "4", "--gamma", "0.6", "--alpha", "0.3",
                 "--hamiltonian", "both", "--out", str(path)]) == 0  # fmt: skip
    for row in rows_of(path.read_text()):
        rec = MeasureRecord.from_row(row)
        again = {k: cli.fmt(v) for k, v in rec.row().items()}
        assert again == row


def test_sweep_json_matches_schema(tmp_path):
    path = tmp_path / "s.json"
    assert main(["sweep", "--steps", "3", "--format", "json", "--closed-form", "--out", str(path)]) == 0
    rows = json.loads(path.read_text())
    assert len(rows) == 3 * 2 * 4
    for row in rows:
        jsonschema.validate(row, RECORD_SCHEMA)
        if row["value"] is not None:
            assert MeasureRecord.from_row(row).row() == row


def test_empty_grid_is_usage_error(capsys):
    assert main(["sweep", "--steps", "0"]) == 1
    assert "error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [[], ["bogus"], ["sweep", "--state", "ghz"], ["sweep", "--workers", "0"]])
def test_bad_usage_exits_one(argv, capsys):
    assert main(argv) == 1


def test_numerical_failure_exits_two(monkeypatch, capsys):
    def broken(*args, **kwargs):
        raise ArithmeticError("boom")

    monkeypatch.setattr(cli, "sweep", broken)
    assert cli.run(RunConfig("sweep", steps=2)) == 2
    assert "numerical failure" in capsys.readouterr().err


def test_sce_command(capsys):
    assert main(["sce", "--state", "werner"]) == 0
    rows = rows_of(capsys.readouterr().out)
    assert float(rows[0]["location"]) == pytest.approx(0.4630866, abs=1e-5)
    assert main(["sce", "--state", "werner", "--start", "0.6", "--stop", "0.9"]) == 0
    row = rows_of(capsys.readouterr().out)[0]
    assert row["location"] == "" and "no SCE point" in row["note"]


def test_esd_command(capsys):
    assert main(["esd", "--state", "werner", "--gamma", "0.600001", "--alpha", "0.600001", "--steps", "101"]) == 0
    rows = rows_of(capsys.readouterr().out)
    assert len(rows) == 1
    assert float(rows[0]["onset"]) == pytest.approx(0.690632, abs=1e-5)


def test_verify_writes_artifacts_and_strict_exit(tmp_path, capsys):
    out = tmp_path / "v"
    assert main(["verify", "--steps", "11", "--out", str(out)]) == 0
    anchors = rows_of((out / "anchors.csv").read_text())
    assert len(anchors) == 11
    assert {r["status"] for r in anchors} <= {"PASS", "PASS-WITH-NOTE", "FLAGGED"}
    report = json.loads((out / "discrepancies.json").read_text())
    jsonschema.validate(report, REPORT_SCHEMA)
    assert "FLAGGED" in capsys.readouterr().err
    assert main(["verify", "--steps", "11", "--out", str(out), "--strict"]) == 3


def test_verify_table_on_stdout(capsys):
    assert main(["verify", "--steps", "11"]) == 0
    out = capsys.readouterr().out
    assert "werner-sce" in out and "PASS" in out


def test_figures(tmp_path):
    out = tmp_path / "figs"
    assert main(["figures", "--steps", "3", "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert "fig1.csv" in names and "fig2_jt0.600001.csv" in names
    assert "fig4_gamma0.200001.csv" in names and "fig5_alpha0.csv" in names
    assert len(names) == 17
    fig1 = rows_of((out / "fig1.csv").read_text())
    assert list(fig1[0]) == ["gamma", "SE_W", "SE_M", "C_W", "C_M"]
    assert float(fig1[-1]["SE_W"]) == pytest.approx(1, abs=1e-9)
    assert float(fig1[-1]["C_M"]) == pytest.approx(1, abs=1e-9)
    fig4 = rows_of((out / "fig4_gamma0.600001.csv").read_text())
    assert list(fig4[0])[0] == "jt" and fig4[-1]["jt"] == "2"


def test_output_is_byte_identical_across_runs_and_workers(tmp_path):
    paths = [tmp_path / f"r{i}.csv" for i in range(3)]
    base = ["sweep", "--axis", "jt", "--steps", "5", "--gamma", "0.7", "--hamiltonian", "both"]
    assert main(base + ["--out", str(paths[0])]) == 0
    assert main(base + ["--out", str(paths[1])]) == 0
    assert main(base + ["--out", str(paths[2]), "--workers", "2"]) == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]


def test_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"command": "sweep", "state": "mems", "steps": 2}))
    assert main(["--config", str(cfg)]) == 0
    rows = rows_of(capsys.readouterr().out)
    assert {r["state"] for r in rows} == {"mems"} and len(rows) == 4
    assert main(["--config", str(cfg), "--state", "werner"]) == 0
    assert {r["state"] for r in rows_of(capsys.readouterr().out)} == {"werner"}
    cfg.write_text(json.dumps({"command": "sweep", "colour": "red"}))
    assert main(["--config", str(cfg)]) == 1


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "sqconc", "sweep", "--state", "werner", "--steps", "2"],
        capture_output=True, text=True, check=False,
    )  # fmt: skip
    assert proc.returncode == 0
    assert proc.stdout.startswith("state,hamiltonian,measure")
