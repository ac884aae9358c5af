"""Command-line front end: ``sqconc {sweep,sce,esd,verify,figures}``.

Exit status: 0 success, 1 usage or configuration error, 2 numerical failure,
3 FLAGGED anchors under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from sqconc.analysis import (
    FIXED_VALUE,
    SweepError,
    find_esd_zones,
    find_sce,
    sweep,
    verify_paper_anchors,
)
from sqconc.exceptions import NoSignChangeError, ParameterError, SqconcError
from sqconc.measures import CONCURRENCE, SQUASHED
from sqconc.records import AXES, CSV_FIELDS, DiscrepancyReport, MeasureRecord, SweepGrid
from sqconc.states import HamiltonianKind, StateFamily

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_STRICT = 0, 1, 2, 3
COMMANDS = ("sweep", "sce", "esd", "verify", "figures")

RECORD_SCHEMA = {
    "type": "object",
    "properties": {
        "state": {"enum": [f.value for f in StateFamily]},
        "hamiltonian": {"enum": [h.value for h in HamiltonianKind]},
        "measure": {"enum": [SQUASHED, CONCURRENCE]},
        "source": {"enum": ["numeric", "closed-form"]},
        "alpha": {"type": "number"},
        "gamma": {"type": "number"},
        "j": {"type": "number"},
        "t": {"type": "number"},
        "jt": {"type": "number"},
        "value": {"type": ["number", "null"]},
    },
    "required": list(CSV_FIELDS),
    "additionalProperties": False,
}

_COMPARISON_SCHEMA = {
    "type": "object",
    "properties": {
        "label": {"type": "string"},
        "measure": {"type": "string"},
        "max_abs_deviation": {"type": ["number", "null"]},
        "argmax": {"type": ["number", "null"]},
        "scale": {"type": ["number", "null"]},
        "scaled_deviation": {"type": ["number", "null"]},
        "max_imag": {"type": "number"},
        "status": {"enum": ["PASS", "FLAGGED"]},
        "notes": {"type": "array", "items": {"type": "string"}},
        "table": {"type": "array", "items": {"type": "object"}},
    },
    "required": ["measure", "max_abs_deviation", "scale", "status"],
}

REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "title": {"type": "string"},
        "grid": {"type": ["object", "null"]},
        "comparisons": {"type": "array", "items": _COMPARISON_SCHEMA},
        "anchors": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "anchor": {"type": "string"},
                    "quoted_value": {"type": "number"},
                    "computed": {"type": ["number", "null"]},
                    "tolerance": {"type": "number"},
                    "status": {"enum": ["PASS", "PASS-WITH-NOTE", "FLAGGED"]},
                    "note": {"type": "string"},
                },
                "required": ["anchor", "quoted_value", "computed", "tolerance", "status"],
            },
        },
    },
    "required": ["title", "comparisons", "anchors"],
}

# panel values; the quoted fixed value 0.600001 is always among them
FIG_JT_VALUES = (0.0, 0.300001, FIXED_VALUE, 0.900001)
FIG_ALPHA_VALUES = (0.0, 0.300001, FIXED_VALUE, 0.900001)
FIG_GAMMA_VALUES = (0.200001, 0.400001, FIXED_VALUE, 0.800001)
FIG_JT_RANGE = (0.0, 2.0)


@dataclass
class RunConfig:
    command: str
    state: str = "both"
    hamiltonian: str = "h1"
    alpha: float = 0.0
    gamma: float = 0.0
    jt: float = 0.0
    axis: str = "gamma"
    start: float | None = None
    stop: float | None = None
    steps: int | None = None
    out: str = "-"
    format: str = "csv"
    strict: bool = False
    closed_form: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ParameterError(f"unknown command {self.command!r}")
        if self.state not in ("werner", "mems", "both"):
            raise ParameterError(f"--state must be werner, mems or both, got {self.state!r}")
        if self.hamiltonian not in ("h1", "h2", "both"):
            raise ParameterError(f"--hamiltonian must be h1, h2 or both, got {self.hamiltonian!r}")
        if self.format not in ("csv", "json"):
            raise ParameterError(f"--format must be csv or json, got {self.format!r}")
        if self.axis not in AXES:
            raise ParameterError(f"--axis must be one of {AXES}, got {self.axis!r}")
        if self.workers < 1:
            raise ParameterError("--workers must be at least 1")

    @property
    def families(self) -> tuple[StateFamily, ...]:
        return tuple(StateFamily) if self.state == "both" else (StateFamily(self.state),)

    @property
    def hamiltonians(self) -> tuple[HamiltonianKind, ...]:
        return tuple(HamiltonianKind) if self.hamiltonian == "both" else (HamiltonianKind(self.hamiltonian),)

    def grid(self, default_steps: int = 401) -> SweepGrid:
        start = self.start if self.start is not None else 0.0
        stop = self.stop if self.stop is not None else (FIG_JT_RANGE[1] if self.axis == "jt" else 1.0)
        return SweepGrid(
            axis=self.axis, start=start, stop=stop,
            steps=default_steps if self.steps is None else self.steps,
            gamma=self.gamma, alpha=self.alpha, jt=self.jt,
            families=self.families, hamiltonians=self.hamiltonians,
        )  # fmt: skip


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return "nan" if math.isnan(x) else f"{x:.12g}"
    return str(x)


def _csv_text(header: Sequence[str], rows: Sequence[dict[str, Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(row.get(h)) for h in header])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False) + "\n"


def _emit(text: str, out: str) -> None:
    if out == "-":
        sys.stdout.write(text)
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _finite(x):
    return x if x is None or not isinstance(x, float) or math.isfinite(x) else None


def records_csv(records: Sequence[MeasureRecord]) -> str:
    return _csv_text(CSV_FIELDS, [r.row() for r in records])


def records_json(records: Sequence[MeasureRecord]) -> str:
    rows = [{k: _finite(v) for k, v in r.row().items()} for r in records]
    return _json_text(rows)


def _run_sweep(cfg: RunConfig) -> int:
    records = sweep(cfg.grid(), include_closed=cfg.closed_form, workers=cfg.workers)
    _emit(records_csv(records) if cfg.format == "csv" else records_json(records), cfg.out)
    return EXIT_OK


def _run_sce(cfg: RunConfig) -> int:
    lo = 0.0 if cfg.start is None else cfg.start
    hi = 1.0 if cfg.stop is None else cfg.stop
    rows = []
    for fam in cfg.families:
        for ham in cfg.hamiltonians:
            row = {"state": fam.value, "hamiltonian": ham.value, "alpha": cfg.alpha, "jt": cfg.jt}
            try:
                res = find_sce(fam, ham, cfg.alpha, cfg.jt, (lo, hi), prescan=cfg.steps or 200)
                row.update(location=res.location, bracket_lo=res.bracket[0], bracket_hi=res.bracket[1],
                           residual=res.residual, iterations=res.iterations, note="")  # fmt: skip
            except NoSignChangeError as exc:
                row.update(location=None, note=str(exc))
            rows.append(row)
    header = ["state", "hamiltonian", "alpha", "jt", "location", "bracket_lo", "bracket_hi",
              "residual", "iterations", "note"]  # fmt: skip
    _emit(_csv_text(header, rows) if cfg.format == "csv" else _json_text(rows), cfg.out)
    return EXIT_OK


def _run_esd(cfg: RunConfig) -> int:
    lo = 0.0 if cfg.start is None else cfg.start
    hi = FIG_JT_RANGE[1] if cfg.stop is None else cfg.stop
    reports, rows = [], []
    for fam in cfg.families:
        for ham in cfg.hamiltonians:
            rep = find_esd_zones(fam, cfg.gamma, cfg.alpha, (lo, hi), cfg.steps or 401, ham)
            reports.append(dataclasses.asdict(rep))
            for i, ((on, off), (on_br, off_br)) in enumerate(zip(rep.zones, rep.brackets)):
                rows.append({
                    "state": fam.value, "hamiltonian": ham.value, "gamma": cfg.gamma, "alpha": cfg.alpha,
                    "zone": i, "onset": on, "offset": off, "onset_lo": on_br[0], "onset_hi": on_br[1],
                    "offset_lo": off_br[0], "offset_hi": off_br[1],
                })  # fmt: skip
    header = ["state", "hamiltonian", "gamma", "alpha", "zone", "onset", "offset",
              "onset_lo", "onset_hi", "offset_lo", "offset_hi"]  # fmt: skip
    _emit(_csv_text(header, rows) if cfg.format == "csv" else _json_text(reports), cfg.out)
    return EXIT_OK


def anchors_table(report: DiscrepancyReport) -> str:
    lines = []
    for a in report.anchors:
        computed = "-" if a.computed is None else f"{a.computed:.6g}"
        lines.append(f"{a.status:<15} {a.anchor:<30} quoted={a.quoted_value:<10.6g} computed={computed:<12} tol={a.tolerance:g}")
    for c in report.comparisons:
        lines.append(f"{c.status:<15} {c.label + ' ' + c.measure:<45} max|dev|={c.max_abs_deviation:.3g} scale={c.scale}")
    return "\n".join(lines) + "\n"


def _run_verify(cfg: RunConfig) -> int:
    report = verify_paper_anchors(workers=cfg.workers, grid_steps=cfg.steps or 101)
    if cfg.out == "-":
        sys.stdout.write(anchors_table(report))
    else:
        out = Path(cfg.out)
        out.mkdir(parents=True, exist_ok=True)
        rows = [dataclasses.asdict(a) for a in report.anchors]
        header = ["anchor", "quoted_value", "computed", "tolerance", "status", "note"]
        if cfg.format == "csv":
            (out / "anchors.csv").write_text(_csv_text(header, rows))
        else:
            (out / "anchors.json").write_text(_json_text(report.to_dict()["anchors"]))
        (out / "discrepancies.json").write_text(_json_text(report.to_dict()))
        sys.stderr.write(anchors_table(report))
    return EXIT_STRICT if cfg.strict and report.flagged else EXIT_OK


FIGURE_COLUMNS = ("SE_W", "SE_M", "C_W", "C_M")


def figure_panel(axis: str, start: float, stop: float, steps: int, workers: int = 1, **fixed) -> list[dict]:
    """Wide-format rows (axis value + SE_W, SE_M, C_W, C_M) for one panel under H1."""
    grid = SweepGrid(axis=axis, start=start, stop=stop, steps=steps, hamiltonians=(HamiltonianKind.H1,), **fixed)
    rows: dict[float, dict] = {}
    for rec in sweep(grid, workers=workers):
        x = getattr(rec.params, axis)
        row = rows.setdefault(x, {axis: x})
        tag = "SE" if rec.measure == SQUASHED else "C"
        row[f"{tag}_{'W' if rec.params.state_family is StateFamily.WERNER else 'M'}"] = rec.value
    return list(rows.values())


def _run_figures(cfg: RunConfig) -> int:
    out = Path("figures" if cfg.out == "-" else cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    steps = cfg.steps or 401
    jt0, jt1 = FIG_JT_RANGE
    panels = {"fig1": ("gamma", 0.0, 1.0, {"alpha": 0.0, "jt": 0.0})}
    for v in FIG_JT_VALUES:
        panels[f"fig2_jt{v:g}"] = ("gamma", 0.0, 1.0, {"alpha": FIXED_VALUE, "jt": v})
    for v in FIG_ALPHA_VALUES:
        panels[f"fig3_alpha{v:g}"] = ("gamma", 0.0, 1.0, {"alpha": v, "jt": FIXED_VALUE})
    for v in FIG_GAMMA_VALUES:
        panels[f"fig4_gamma{v:g}"] = ("jt", jt0, jt1, {"gamma": v, "alpha": FIXED_VALUE})
    for v in FIG_ALPHA_VALUES:
        panels[f"fig5_alpha{v:g}"] = ("jt", jt0, jt1, {"gamma": FIXED_VALUE, "alpha": v})
    for name, (axis, lo, hi, fixed) in panels.items():
        rows = figure_panel(axis, lo, hi, steps, cfg.workers, **fixed)
        (out / f"{name}.csv").write_text(_csv_text((axis, *FIGURE_COLUMNS), rows))
    return EXIT_OK


_RUNNERS = {
    "sweep": _run_sweep,
    "sce": _run_sce,
    "esd": _run_esd,
    "verify": _run_verify,
    "figures": _run_figures,
}


def run(config: RunConfig) -> int:
    """Execute one command and return its exit status."""
    try:
        return _RUNNERS[config.command](config)
    except (ParameterError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (SweepError, SqconcError, ArithmeticError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERIC


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqconc", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    parser.add_argument("command", nargs="?", choices=COMMANDS)
    parser.add_argument("--state", choices=("werner", "mems", "both"))
    parser.add_argument("--hamiltonian", choices=("h1", "h2", "both"))
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--jt", type=float)
    parser.add_argument("--axis", choices=AXES)
    parser.add_argument("--start", type=float)
    parser.add_argument("--stop", type=float)
    parser.add_argument("--steps", type=int)
    parser.add_argument("--out", help="output file ('-' for stdout) or directory for verify/figures")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--strict", action="store_true", default=None)
    parser.add_argument("--closed-form", dest="closed_form", action="store_true", default=None,
                        help="add closed-form records to sweep output")  # fmt: skip
    parser.add_argument("--workers", type=int)
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = vars(build_parser().parse_args(argv))
    settings: dict[str, Any] = {}
    path = args.pop("config")
    if path:
        with open(path, encoding="utf-8") as fh:
            settings = json.load(fh)
        if not isinstance(settings, dict):
            raise ParameterError("config file must hold a JSON object")
        unknown = set(settings) - {f.name for f in dataclasses.fields(RunConfig)}
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
    settings.update({k: v for k, v in args.items() if v is not None})
    if "command" not in settings:
        raise ParameterError("no command given")
    return RunConfig(**settings)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        config = config_from_args(argv)
    except (_UsageError, ParameterError, OSError, json.JSONDecodeError, TypeError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
