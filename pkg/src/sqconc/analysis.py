"""Parameter sweeps, balance-point and sudden-death searches, anchor checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from sqconc.closed_form import closed_concurrence, closed_sqe, compare_closed_vs_numeric
from sqconc.config import get_tolerances
from sqconc.dynamics import HamiltonianSpec, evolve
from sqconc.exceptions import NoSignChangeError, SqconcError
from sqconc.measures import (
    CONCURRENCE,
    SQUASHED,
    concurrence,
    concurrence_margin,
    evolved_state,
    measure_point,
    reduced_ab,
    squashed_proxy,
)
from sqconc.parallel import ordered_map
from sqconc.records import AnchorCheck, DiscrepancyReport, MeasureRecord, SweepGrid
from sqconc.states import HamiltonianKind, ModelParams, StateFamily, initial_state

FIXED_VALUE = 0.600001  # fixed alpha / jt / gamma used for the non-initial cases


class SweepError(SqconcError, RuntimeError):
    def __init__(self, params, cause):
        super().__init__(f"evaluation failed at {params}: {cause}")
        self.params = params


@dataclass(frozen=True)
class CrossingResult:
    location: float
    bracket: tuple[float, float]
    residual: float
    iterations: int


@dataclass
class ESDReport:
    zones: list[tuple[float, float]]
    brackets: list[tuple[tuple[float, float], tuple[float, float]]]  # (onset, offset) brackets
    threshold: float
    minimum: tuple[float, float]  # (jt, concurrence) at the smallest scanned value
    params: dict = field(default_factory=dict)

    @property
    def onset(self) -> float | None:
        return self.zones[0][0] if self.zones else None


def bisect(fn: Callable[[float], float], lo: float, hi: float, xtol: float) -> tuple[float, int]:
    """Root of ``fn`` on [lo, hi]; requires a sign change.  Returns (x, iterations)."""
    flo, fhi = fn(lo), fn(hi)
    if flo == 0:
        return lo, 0
    if fhi == 0:
        return hi, 0
    if (flo > 0) == (fhi > 0):
        raise NoSignChangeError(f"no sign change on [{lo}, {hi}]: f = {flo:.3e}, {fhi:.3e}")
    it = 0
    while hi - lo > xtol:
        it += 1
        mid = 0.5 * (lo + hi)
        fm = fn(mid)
        if fm == 0:
            return mid, it
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi), it


def bisect_predicate(pred: Callable[[float], bool], inside: float, outside: float, xtol: float):
    """Shrink [inside, outside] around the boundary where ``pred`` flips."""
    it = 0
    while abs(outside - inside) > xtol:
        it += 1
        mid = 0.5 * (inside + outside)
        if pred(mid):
            inside = mid
        else:
            outside = mid
    return inside, outside, it


def _evaluate(args) -> list[MeasureRecord]:
    params, include_closed = args
    try:
        sq, conc = measure_point(params)
    except (SqconcError, ArithmeticError, ValueError) as exc:
        raise SweepError(params, exc) from exc
    out = [
        MeasureRecord(params, SQUASHED, "numeric", sq.value),
        MeasureRecord(params, CONCURRENCE, "numeric", conc.value),
    ]
    if include_closed:
        fam, ham = params.state_family, params.hamiltonian
        for measure, fn in ((SQUASHED, closed_sqe), (CONCURRENCE, closed_concurrence)):
            try:
                value = fn(fam, ham, params)
            except SqconcError:
                value = math.nan
            out.append(MeasureRecord(params, measure, "closed-form", value))
    return out


def sweep(grid: SweepGrid, include_closed: bool = False, workers: int = 1) -> list[MeasureRecord]:
    """Evaluate every grid point; closed-form failures become NaN records."""
    chunks = ordered_map(_evaluate, [(p, include_closed) for p in grid.points()], workers)
    return [rec for chunk in chunks for rec in chunk]


def _point(family, hamiltonian, gamma, alpha, jt, j=1.0) -> ModelParams:
    return ModelParams(gamma=gamma, alpha=alpha, jt=jt, state_family=family, hamiltonian=hamiltonian, j=j)


def _sce_gap(family, hamiltonian, alpha, jt):
    def gap(gamma):
        sq, conc = measure_point(_point(family, hamiltonian, gamma, alpha, jt))
        return sq.value - conc.value

    return gap


def _first_bracket(fn, lo, hi, n):
    """First grid cell with a sign change; leading exact zeros are skipped."""
    xs = np.linspace(lo, hi, n)
    prev_x, prev_f = None, 0.0
    for x in xs:
        fx = fn(float(x))
        if prev_f == 0:
            if fx != 0:
                prev_x, prev_f = x, fx
            continue
        if fx == 0:
            return float(x), float(x)
        if (fx > 0) != (prev_f > 0):
            return float(prev_x), float(x)
        prev_x, prev_f = x, fx
    return None


def find_crossing(fn, bracket=(0.0, 1.0), prescan: int = 200, xtol: float | None = None) -> CrossingResult:
    xtol = get_tolerances().root_xtol if xtol is None else xtol
    lo, hi = bracket
    found = _first_bracket(fn, lo, hi, prescan)
    if found is None:
        raise NoSignChangeError(f"no sign change on [{lo}, {hi}]")
    a, b = found
    if a == b:
        return CrossingResult(a, (a, a), abs(fn(a)), 0)
    x, it = bisect(fn, a, b, xtol)
    return CrossingResult(x, (a, b), abs(fn(x)), it)


def find_sce(
    family,
    hamiltonian=HamiltonianKind.H1,
    alpha: float = 0.0,
    jt: float = 0.0,
    bracket=(0.0, 1.0),
    prescan: int = 200,
) -> CrossingResult:
    """First gamma in ``bracket`` where squashed proxy and concurrence balance.

    Raises :class:`NoSignChangeError` when the gap keeps one sign throughout.
    """
    try:
        return find_crossing(_sce_gap(family, hamiltonian, alpha, jt), bracket, prescan)
    except NoSignChangeError as exc:
        raise NoSignChangeError(f"no SCE point in bracket {tuple(bracket)}") from exc


def find_concurrence_onset(
    family=StateFamily.WERNER,
    hamiltonian=HamiltonianKind.H1,
    alpha: float = 0.0,
    jt: float = 0.0,
    bracket=(0.0, 1.0),
    xtol: float | None = None,
) -> CrossingResult:
    """Smallest gamma where the unclipped concurrence margin changes sign."""

    def margin(gamma):
        return concurrence_margin(reduced_ab(evolved_state(_point(family, hamiltonian, gamma, alpha, jt))))

    return find_crossing(margin, bracket, xtol=xtol)


def _concurrence_along_jt(family, hamiltonian, gamma, alpha, j=1.0):
    rho0 = initial_state(_point(family, hamiltonian, gamma, alpha, 0.0, j))
    spec = HamiltonianSpec(hamiltonian, j)

    def conc(jt):
        return concurrence(reduced_ab(evolve(rho0, spec, jt / j)))

    return conc


def find_esd_zones(
    family=StateFamily.WERNER,
    gamma: float = FIXED_VALUE,
    alpha: float = FIXED_VALUE,
    jt_range=(0.0, 2.0),
    steps: int = 401,
    hamiltonian=HamiltonianKind.H1,
) -> ESDReport:
    """Intervals of jt on which the concurrence vanishes (below threshold).

    Zones come from a grid scan; each interior boundary is then bisected to the
    configured root tolerance.  Boundaries on the ends of ``jt_range`` are kept
    as is.
    """
    tol = get_tolerances()
    thr = tol.zero_concurrence
    conc = _concurrence_along_jt(family, hamiltonian, gamma, alpha)
    xs = np.linspace(jt_range[0], jt_range[1], steps)
    vals = np.array([conc(x) for x in xs])
    inside = vals < thr

    def is_zero(x):
        return conc(x) < thr

    zones, brackets = [], []
    i = 0
    while i < len(xs):
        if not inside[i]:
            i += 1
            continue
        k = i
        while k + 1 < len(xs) and inside[k + 1]:
            k += 1
        if i == 0:
            on, on_br = float(xs[0]), (float(xs[0]), float(xs[0]))
        else:
            a, b, _ = bisect_predicate(is_zero, float(xs[i]), float(xs[i - 1]), tol.root_xtol)
            on, on_br = a, (b, a)
        if k == len(xs) - 1:
            off, off_br = float(xs[-1]), (float(xs[-1]), float(xs[-1]))
        else:
            a, b, _ = bisect_predicate(is_zero, float(xs[k]), float(xs[k + 1]), tol.root_xtol)
            off, off_br = a, (a, b)
        zones.append((on, off))
        brackets.append((on_br, off_br))
        i = k + 1

    jmin = int(np.argmin(vals))
    return ESDReport(
        zones=zones,
        brackets=brackets,
        threshold=thr,
        minimum=(float(xs[jmin]), float(vals[jmin])),
        params={"family": StateFamily(family).value, "hamiltonian": HamiltonianKind(hamiltonian).value,
                "gamma": gamma, "alpha": alpha, "jt_range": list(jt_range), "steps": steps},
    )  # fmt: skip


def _anchor(name, quoted, computed, tol, exact_tol=None, note=""):
    if computed is None or not math.isfinite(computed):
        return AnchorCheck(name, quoted, None, tol, "FLAGGED", note or "no value computed")
    diff = abs(computed - quoted)
    if diff <= (tol if exact_tol is None else exact_tol):
        status = "PASS"
    elif diff <= tol:
        status = "PASS-WITH-NOTE"
        note = note or f"within tolerance but differs from the quoted value by {diff:.3g}"
    else:
        status = "FLAGGED"
    return AnchorCheck(name, quoted, float(computed), tol, status, note)


def max_h2_h1_conjugacy_deviation(samples: int = 5, seed: int = 0) -> float:
    """Largest elementwise gap between evolve under H2(j) and under H1(-j)."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for fam in StateFamily:
        for gamma in rng.uniform(0, 1, samples):
            for alpha in rng.uniform(0, 1, samples):
                rho0 = initial_state(_point(fam, HamiltonianKind.H1, float(gamma), float(alpha), 0.0))
                for jt in rng.uniform(0, 2 * math.pi, samples):
                    r2 = evolve(rho0, HamiltonianSpec(HamiltonianKind.H2, 1.0), jt)
                    r1 = evolve(rho0, HamiltonianSpec(HamiltonianKind.H1, -1.0), jt)
                    worst = max(worst, float(np.max(np.abs(r2 - r1))))
    return worst


def h2_jt_variation(gamma=FIXED_VALUE, alpha=FIXED_VALUE, jt_max=2.0, steps=41) -> float:
    """Largest change of any numeric measure along jt under H2, both families."""
    worst = 0.0
    for fam in StateFamily:
        start = [mv.value for mv in measure_point(_point(fam, HamiltonianKind.H2, gamma, alpha, 0.0))]
        for jt in np.linspace(0, jt_max, steps):
            vals = [mv.value for mv in measure_point(_point(fam, HamiltonianKind.H2, gamma, alpha, float(jt)))]
            worst = max(worst, max(abs(x - y) for x, y in zip(vals, start)))
    return worst


def _max_over_gamma(fn, lo=0.0, hi=1.0, steps=401):
    xs = np.linspace(lo, hi, steps)
    vals = np.array([fn(float(x)) for x in xs])
    i = int(np.argmax(vals))
    return float(xs[i]), float(vals[i])


def verify_paper_anchors(workers: int = 1, grid_steps: int = 101) -> DiscrepancyReport:
    """Check every quoted numeric result against this pipeline.

    Anchors the pipeline must reproduce use tight tolerances; anchors that
    depend on the quoted formulas or on ambiguous prose are FLAGGED on
    mismatch, never raised.
    """
    W, M = StateFamily.WERNER, StateFamily.MEMS
    H1, H2 = HamiltonianKind.H1, HamiltonianKind.H2
    report = DiscrepancyReport(title="quoted anchors")
    add = report.anchors.append

    sq, conc = measure_point(_point(W, H1, 1.0, 0.0, 0.0))
    add(_anchor("werner-endpoint", 1.0, sq.value, 0.005,
                note=f"squashed {sq.value:.12g}, concurrence {conc.value:.12g}"))  # fmt: skip

    onset = find_concurrence_onset(W, H1, 0.0, 0.0, xtol=1e-10)
    add(_anchor("werner-concurrence-threshold", 1 / 3, onset.location, 1e-6))

    sce_w = find_sce(W, H1, 0.0, 0.0)
    add(_anchor("werner-sce", 0.4630, sce_w.location, 0.005, exact_tol=5e-4))

    try:
        sce_m = find_sce(M, H1, 0.0, 0.0).location
    except NoSignChangeError:
        sce_m = None
    add(_anchor("mems-sce", 0.139, sce_m, 0.02, exact_tol=5e-4))

    origin = squashed_proxy(initial_state(_point(M, H1, 0.0, 0.0, 0.0)))
    oracle = (2 * _h2(1 / 3) - math.log2(3)) / 2
    add(_anchor("mems-sqe-origin", 0.126365, origin, 0.002, exact_tol=1e-6,
                note=f"entropy oracle (2 H2(1/3) - log2 3)/2 = {oracle:.6f}"))  # fmt: skip

    def mems_sq(g):
        return squashed_proxy(initial_state(_point(M, H1, g, 0.0, 0.0)))

    g_at, peak = _max_over_gamma(mems_sq, 0.0, 2 / 3)
    add(_anchor("mems-sqe-max", 0.4428, peak, 0.005, exact_tol=5e-5,
                note=f"maximum of the single-extension proxy on gamma <= 2/3 at gamma = {g_at:.4f}"))  # fmt: skip

    above = [mems_sq(float(g)) for g in np.linspace(2 / 3 + 1e-3, 1.0, 41)]
    add(_anchor("mems-sqe-vanishes-above-2/3", 0.0, min(above), 1e-6,
                note="smallest proxy value for gamma in (2/3, 1]; quoted claim is that it vanishes"))  # fmt: skip

    freeze = []
    for alpha in (0.0, 0.300001, FIXED_VALUE, 0.900001):
        def werner_conc(g, alpha=alpha):
            return concurrence(reduced_ab(evolved_state(_point(W, H1, g, alpha, FIXED_VALUE))))

        freeze.append(_max_over_gamma(werner_conc)[1])
    spread = max(freeze) - min(freeze)
    add(_anchor("concurrence-freeze-jt0.6", 0.363468, freeze[2], 0.05, exact_tol=5e-6,
                note=f"max over gamma of Werner concurrence at jt=0.600001, alpha=0.600001; "
                     f"spread over alpha in {{0, .3, .6, .9}} = {spread:.4g}"))  # fmt: skip

    esd_w = find_esd_zones(W, FIXED_VALUE, FIXED_VALUE, (0.0, 2.0))
    add(_anchor("werner-esd-onset", 0.623712, esd_w.onset, 0.05, exact_tol=5e-6,
                note=f"zones {[(round(a, 6), round(b, 6)) for a, b in esd_w.zones]}"))  # fmt: skip

    esd_m = find_esd_zones(M, FIXED_VALUE, FIXED_VALUE, (0.0, 2.0))
    if esd_m.onset is not None:
        add(_anchor("mems-concurrence-zero", 0.787579, esd_m.onset, 0.05, exact_tol=5e-6))
    else:
        loc, val = esd_m.minimum
        add(AnchorCheck("mems-concurrence-zero", 0.787579, loc, 0.05, "FLAGGED",
                        f"concurrence never vanishes (gamma=alpha=0.600001); its minimum "
                        f"{val:.6f} sits at jt={loc:.6f}"))  # fmt: skip

    conj = max_h2_h1_conjugacy_deviation()
    variation = h2_jt_variation()
    add(_anchor("h2-time-independence", 0.0, variation, 1e-9,
                note=f"H2(j) evolution equals H1(-j) evolution to {conj:.2e}, so H2 measures "
                     f"vary with jt exactly like H1 ones; the quoted closed forms do not"))  # fmt: skip

    origin_grid = dict(axis="gamma", start=0.0, stop=1.0, steps=grid_steps, alpha=0.0, jt=0.0)
    jt_grid = dict(axis="jt", start=0.0, stop=2.0, steps=max(grid_steps // 2, 2),
                   gamma=FIXED_VALUE, alpha=FIXED_VALUE)  # fmt: skip
    for fam in (W, M):
        for ham in (H1, H2):
            for g in (origin_grid, jt_grid):
                sub = compare_closed_vs_numeric(fam, ham, SweepGrid(**g), workers=workers)
                report.comparisons.extend(sub.comparisons)
    return report


def _h2(p: float) -> float:
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)
