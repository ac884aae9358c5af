"""Plain data records passed between the sweep, audit and output layers."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Any, Iterator

import numpy as np

from sqconc.exceptions import ParameterError
from sqconc.states import HamiltonianKind, ModelParams, StateFamily

AXES = ("gamma", "jt", "alpha")
CSV_FIELDS = ("state", "hamiltonian", "measure", "source", "alpha", "gamma", "j", "t", "jt", "value")


@dataclass(frozen=True)
class MeasureRecord:
    params: ModelParams
    measure: str
    source: str  # "numeric" or "closed-form"
    value: float

    def row(self) -> dict[str, Any]:
        p = self.params
        return {
            "state": p.state_family.value,
            "hamiltonian": p.hamiltonian.value,
            "measure": self.measure,
            "source": self.source,
            "alpha": p.alpha,
            "gamma": p.gamma,
            "j": p.j,
            "t": p.t,
            "jt": p.jt,
            "value": self.value,
        }

    @classmethod
    def from_row(cls, row: dict[str, Any]) -> "MeasureRecord":
        params = ModelParams(
            gamma=float(row["gamma"]),
            alpha=float(row["alpha"]),
            jt=float(row["jt"]),
            state_family=row["state"],
            hamiltonian=row["hamiltonian"],
            j=float(row["j"]),
        )
        return cls(params, row["measure"], row["source"], float(row["value"]))


@dataclass(frozen=True)
class SweepGrid:
    """One swept axis plus fixed values for the other parameters.

    Points enumerate in ascending axis order; at each axis value the state
    families and then the Hamiltonians follow the order given here.
    """

    axis: str = "gamma"
    start: float = 0.0
    stop: float = 1.0
    steps: int = 101
    gamma: float = 0.0
    alpha: float = 0.0
    jt: float = 0.0
    families: tuple[StateFamily, ...] = (StateFamily.WERNER, StateFamily.MEMS)
    hamiltonians: tuple[HamiltonianKind, ...] = (HamiltonianKind.H1,)
    j: float = 1.0

    def __post_init__(self):
        if self.axis not in AXES:
            raise ParameterError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)) or self.start > self.stop:
            raise ParameterError(f"need finite start <= stop, got [{self.start}, {self.stop}]")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ParameterError(f"steps must be an integer >= 2, got {self.steps}")
        if self.axis in ("gamma", "alpha") and not (0.0 <= self.start and self.stop <= 1.0):
            raise ParameterError(f"{self.axis} range must lie in [0, 1]")
        object.__setattr__(self, "families", tuple(StateFamily(f) for f in self.families))
        object.__setattr__(self, "hamiltonians", tuple(HamiltonianKind(h) for h in self.hamiltonians))
        if not self.families or not self.hamiltonians:
            raise ParameterError("grid needs at least one state family and one Hamiltonian")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, int(self.steps))

    def points(self) -> Iterator[ModelParams]:
        for x in self.values():
            base = {"gamma": self.gamma, "alpha": self.alpha, "jt": self.jt}
            base[self.axis] = float(x)
            for fam in self.families:
                for ham in self.hamiltonians:
                    yield ModelParams(state_family=fam, hamiltonian=ham, j=self.j, **base)

    def __len__(self) -> int:
        return int(self.steps) * len(self.families) * len(self.hamiltonians)

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        d["families"] = [f.value for f in self.families]
        d["hamiltonians"] = [h.value for h in self.hamiltonians]
        return d


@dataclass
class MeasureComparison:
    measure: str
    max_abs_deviation: float
    argmax: float | None  # swept-axis value of the largest deviation
    scale: float | None  # s minimising sum (closed - s * numeric)^2
    scaled_deviation: float | None
    max_imag: float
    status: str  # PASS or FLAGGED
    label: str = ""
    notes: list[str] = field(default_factory=list)
    table: list[dict[str, Any]] = field(default_factory=list)  # filled when FLAGGED


@dataclass
class AnchorCheck:
    anchor: str
    quoted_value: float
    computed: float | None
    tolerance: float
    status: str  # PASS, PASS-WITH-NOTE or FLAGGED
    note: str = ""


@dataclass
class DiscrepancyReport:
    title: str
    comparisons: list[MeasureComparison] = field(default_factory=list)
    anchors: list[AnchorCheck] = field(default_factory=list)
    grid: dict[str, Any] | None = None

    @property
    def flagged(self) -> bool:
        return any(c.status == "FLAGGED" for c in self.comparisons) or any(
            a.status == "FLAGGED" for a in self.anchors
        )

    def to_dict(self) -> dict[str, Any]:
        return _jsonable(dataclasses.asdict(self))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (StateFamily, HamiltonianKind)):
        return obj.value
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, np.integer):
        return int(obj)
    return obj
