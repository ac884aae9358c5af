"""Closed-form squashed-entanglement and rho*rho~ spectrum expressions.

Every expression is evaluated exactly as printed, in complex arithmetic with
``a = exp(2i jt)``:

* logarithms are natural; the constant ``b = 0.180337`` carries the rescaling,
* square roots and logarithms take the principal branch,
* ``gamma`` and ``delta`` are real, so starred quantities only conjugate the
  dependence on ``a``,
* a term ``coef * log(arg)`` with vanishing ``coef`` is 0, including arg = 0.

Nothing is rescaled or patched; :func:`compare_closed_vs_numeric` reports how
the raw formulas relate to the numeric pipeline.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, fields

import numpy as np

from sqconc.config import get_tolerances
from sqconc.exceptions import FormulaDomainError, SqconcError
from sqconc.measures import CONCURRENCE, SQUASHED, measure_point
from sqconc.parallel import ordered_map
from sqconc.records import DiscrepancyReport, MeasureComparison, SweepGrid
from sqconc.states import HamiltonianKind, ModelParams, StateFamily, g_of_gamma

B = 0.180337
B_PRIME = 0.333333
_COEF_ZERO = 1e-14


class ComplexSpectrumError(SqconcError, ArithmeticError):
    pass


@dataclass(frozen=True)
class SymbolTable:
    # shared table
    a: complex
    b: float
    b_p: float
    f: float
    f_p: float
    f_pp: float
    f_ppp: float
    f_pppp: float
    g: float
    g_p: complex
    h: float
    h_p: float
    v: float
    m: float
    m_p: float
    n: float
    n_p: float
    delta: float
    # Werner, H1 squashed
    G: complex
    H: complex
    c: complex
    c_p: complex
    d: complex
    d_p: complex
    # Werner, H1 spectrum
    X: complex
    Y: complex
    Z: complex
    p: complex
    p_p: complex
    # MEMS, H1 squashed
    P: complex
    Q: complex
    k: complex
    k_p: complex
    l: complex
    l_p: complex
    # MEMS, H1 spectrum
    R: complex
    S: complex
    q: complex
    q_p: complex
    w: complex
    # MEMS, H2 spectrum
    T: float

    def as_dict(self) -> dict:
        return {fld.name: getattr(self, fld.name) for fld in fields(self)}


def eval_symbols(params: ModelParams) -> SymbolTable:
    gamma, alpha = float(params.gamma), float(params.alpha)
    a = cmath.exp(2j * params.jt)
    ai = a.conjugate()
    al2 = alpha * alpha
    delta = g_of_gamma(gamma)

    f = 1 - gamma
    f_p = 1 - gamma**2
    f_pp = 1 + gamma
    f_ppp = 1 + gamma
    f_pppp = 1 - gamma
    g = 1 - al2
    g_p = 1 + a**4
    h = 1 - delta
    h_p = 1 - 2 * delta
    v = 0.25 + 0.75 * gamma
    m = gamma - 2 * delta
    m_p = gamma + 2 * delta
    n = -0.5 * gamma + delta
    n_p = 0.5 * gamma + delta

    G = cmath.sqrt(al2 * g * g_p + a**2 * (1 - 2 * al2 * g))
    H = cmath.sqrt(al2 * f_p * g * g_p + a**2 * (1 - 2 * al2 * f_p * g))
    c = 0.5 - 0.5 * ai * G
    c_p = 0.5 + 0.5 * ai * G
    d = 0.25 - 0.25 * ai * H
    d_p = 0.25 + 0.25 * ai * H

    X = complex(0.25 * (al2 * f + g * f))
    Y = (-0.5 * (a * al2 * gamma + ai * g * gamma)).conjugate()
    Z = (-0.5 * (ai * al2 * gamma + a * g * gamma)).conjugate()
    p = (
        -4 * gamma * (Z + Y * al2 - Z * al2)
        - 4 * a**2 * gamma * (Y - Y * al2 + Z * al2)
        + a * f_pp * f_ppp
    )
    p_p = cmath.sqrt(
        p**2
        - 16
        * (4 * al2 * gamma**2 * g * g_p - a**2 * (1 + 2 * gamma - (3 - 8 * al2 * g) * gamma**2))
        * (Y * Z - f_pp**2 / 16)
    )

    P = cmath.sqrt(
        a**2 * (0.25 - (0.5 + 2 * al2 * g) * delta + (0.25 + 4 * al2 * g) * delta**2)
        + al2 * delta * g * g_p * h_p
    )
    Q = cmath.sqrt(4 * al2 * h * delta * g * g_p + a**2 * (1 - 8 * al2 * g * h * delta))
    k = 0.5 - 0.5 * ai * Q
    k_p = 0.5 + 0.5 * ai * Q
    l = 0.5 - ai * P - 0.5 * delta
    l_p = 0.5 + ai * P - 0.5 * delta

    R = (0.5 * gamma * (a * al2 * gamma + ai * g * gamma)).conjugate()
    S = (0.5 * gamma * (ai * al2 * gamma + a * g * gamma)).conjugate()
    q = S + R * al2 - S * al2 + a**2 * (R - R * al2 + S * al2) + 4 * a * delta * delta
    w = al2 * gamma**2 * g * g_p + a**2 * ((1 - 2 * al2 * g) * gamma**2 - 4 * delta**2)
    q_p = cmath.sqrt(
        -w
        * (0.5 * a * al2 * gamma + 0.5 * ai * g * gamma).conjugate()
        * (0.5 * ai * al2 * gamma + 0.5 * a * g * gamma).conjugate()
        + w * delta**2
        + 0.25 * q**2
    )

    T = delta * gamma + gamma * delta

    return SymbolTable(
        a=a, b=B, b_p=B_PRIME, f=f, f_p=f_p, f_pp=f_pp, f_ppp=f_ppp, f_pppp=f_pppp,
        g=g, g_p=g_p, h=h, h_p=h_p, v=v, m=m, m_p=m_p, n=n, n_p=n_p, delta=delta,
        G=G, H=H, c=c, c_p=c_p, d=d, d_p=d_p,
        X=X, Y=Y, Z=Z, p=p, p_p=p_p,
        P=P, Q=Q, k=k, k_p=k_p, l=l, l_p=l_p,
        R=R, S=S, q=q, q_p=q_p, w=w, T=T,
    )  # fmt: skip


def _xlog(coef, arg, term: str) -> complex:
    if abs(coef) <= _COEF_ZERO:
        return 0j
    arg = complex(arg)
    if arg == 0 or (abs(arg.imag) <= 1e-12 * max(1.0, abs(arg)) and arg.real < 0):
        raise FormulaDomainError(term, arg)
    return coef * cmath.log(arg)


def _sqe_werner_h1(s: SymbolTable, gamma: float) -> complex:
    a, b, ai = s.a, s.b, s.a.conjugate()
    bracket = (
        _xlog(a - s.G, s.c, "(a-G)log(c)")
        + _xlog(a + s.G, s.c_p, "(a+G)log(c')")
        - _xlog(a - s.H, s.d, "(a-H)log(d)")
        - _xlog(a + s.H, s.d_p, "(a+H)log(d')")
    )
    tail = _xlog(s.f, 0.25 * s.f, "f log(0.25f)") + _xlog(s.b_p + gamma, s.v, "(b'+gamma)log(v)")
    return 0.5 + 2 * ai * b * bracket + 3 * b * tail


def _sqe_mems_h1(s: SymbolTable, gamma: float) -> complex:
    a, b, ai, dl, h = s.a, s.b, s.a.conjugate(), s.delta, s.h
    first = 2 * ai * b * (
        _xlog(a - s.Q, s.k, "(a-Q)log(k)") + _xlog(a + s.Q, s.k_p, "(a+Q)log(k')")
    )
    middle = (
        _xlog(8 * b * (0.5 - dl), s.h_p, "8b(0.5-delta)log(h')")
        - _xlog(4 * b * h, h, "4bh log(h)")
        - _xlog(4 * b * dl, dl, "4b delta log(delta)")
    )
    inner = (
        _xlog(4 * b * s.P - 2 * a * b * h, s.l, "(4bP-2abh)log(l)")
        - _xlog(4 * b * s.P + 2 * a * b * h, s.l_p, "(4bP+2abh)log(l')")
        - _xlog(4 * a * b * dl, dl, "4ab delta log(delta)")
    )
    last = -2 * b * (_xlog(s.m, s.n, "m log(n)") - _xlog(s.m_p, s.n_p, "m' log(n')"))
    return first + middle + ai * inner + last


def _sqe_werner_h2(s: SymbolTable, gamma: float) -> complex:
    b = s.b
    return (
        1
        + _xlog(3 * b * s.f, 0.25 * s.f, "3bf log(0.25f)")
        + _xlog(b * (1 + 3 * gamma), s.v, "b(1+3gamma)log(v)")
    )


def _sqe_mems_h2(s: SymbolTable, gamma: float) -> complex:
    b, dl, h = s.b, s.delta, s.h
    return 0.5 * (
        _xlog(16 * b * (0.5 - dl), s.h_p, "16b(0.5-delta)log(h')")
        - _xlog(16 * b * h, h, "16bh log(h)")
        - _xlog(16 * b * dl, dl, "16b delta log(delta)")
        - 4 * b * (_xlog(s.m, s.n, "m log(n)") - _xlog(s.m_p, s.n_p, "m' log(n')"))
    )


_SQE = {
    (StateFamily.WERNER, HamiltonianKind.H1): _sqe_werner_h1,
    (StateFamily.MEMS, HamiltonianKind.H1): _sqe_mems_h1,
    (StateFamily.WERNER, HamiltonianKind.H2): _sqe_werner_h2,
    (StateFamily.MEMS, HamiltonianKind.H2): _sqe_mems_h2,
}


def closed_sqe_complex(family, hamiltonian, params: ModelParams) -> complex:
    """Raw complex value of the printed squashed-entanglement formula."""
    family, hamiltonian = StateFamily(family), HamiltonianKind(hamiltonian)
    return complex(_SQE[family, hamiltonian](eval_symbols(params), float(params.gamma)))


def closed_sqe(family, hamiltonian, params: ModelParams) -> float:
    return closed_sqe_complex(family, hamiltonian, params).real


@dataclass(frozen=True)
class SpectrumQuadruple:
    values: tuple[complex, complex, complex, complex]

    @property
    def max_imag(self) -> float:
        return max(abs(z.imag) for z in self.values)

    def real_nonnegative(self, tol: float | None = None) -> bool:
        tol = get_tolerances().imag_flag if tol is None else tol
        return self.max_imag <= tol and min(z.real for z in self.values) >= -tol

    def concurrence(self) -> float:
        tol = get_tolerances().imag_flag
        if not self.real_nonnegative(tol):
            raise ComplexSpectrumError(
                f"spectrum {self.values} is not real-nonnegative within {tol:g}"
            )
        lam = np.sort(np.sqrt(np.clip([z.real for z in self.values], 0.0, None)))[::-1]
        return max(0.0, float(lam[0] - lam[1:].sum()))


def closed_spectrum(family, hamiltonian, params: ModelParams) -> SpectrumQuadruple:
    family, hamiltonian = StateFamily(family), HamiltonianKind(hamiltonian)
    s = eval_symbols(params)
    gamma = float(params.gamma)
    ai = s.a.conjugate()
    if family is StateFamily.WERNER and hamiltonian is HamiltonianKind.H1:
        vals = (
            0.25 * s.X * s.f,
            0.25 * s.X * s.f,
            ai * (s.p - s.p_p) / 16,
            ai * (s.p + s.p_p) / 16,
        )
    elif family is StateFamily.MEMS and hamiltonian is HamiltonianKind.H1:
        vals = (0, 0, 0.25 * ai * (s.q - 2 * s.q_p), 0.25 * ai * (s.q + 2 * s.q_p))
    elif family is StateFamily.WERNER:
        e = s.f * s.f_pppp / 16
        vals = (e, e, e, (1 + 3 * gamma) * (1 + 3 * gamma) / 16)
    else:
        dd = s.delta * s.delta
        vals = (0, 0, 0.25 * gamma * gamma + dd - 0.5 * s.T, 0.5 * (s.T + 0.5 * gamma * gamma + 2 * dd))
    return SpectrumQuadruple(tuple(complex(z) for z in vals))


def closed_concurrence(family, hamiltonian, params: ModelParams) -> float:
    return closed_spectrum(family, hamiltonian, params).concurrence()


def _audit_point(args):
    family, hamiltonian, params = args
    numeric = {mv.name: mv.value for mv in measure_point(params)}
    out = {}
    for measure in (SQUASHED, CONCURRENCE):
        entry = {"numeric": numeric[measure], "closed": None, "imag": 0.0, "issue": None}
        try:
            if measure == SQUASHED:
                z = closed_sqe_complex(family, hamiltonian, params)
                entry["closed"], entry["imag"] = z.real, abs(z.imag)
            else:
                spec = closed_spectrum(family, hamiltonian, params)
                entry["imag"] = spec.max_imag
                entry["closed"] = spec.concurrence()
        except SqconcError as exc:
            entry["issue"] = f"{type(exc).__name__}: {exc}"
        out[measure] = entry
    return out


def compare_closed_vs_numeric(
    family, hamiltonian, grid: SweepGrid, workers: int = 1
) -> DiscrepancyReport:
    """Audit the closed forms for one (family, Hamiltonian) over ``grid``.

    Only the grid's swept axis and fixed values are used; its family and
    Hamiltonian lists are ignored.  Per measure the report gives the raw
    maximum deviation, the least-squares scale ``s`` in closed ~ s * numeric
    and the deviation left after applying it.  Raw values are never altered;
    a comparison passes only if the unscaled deviation is within tolerance and
    no point raised a domain or complex-spectrum issue.
    """
    tol = get_tolerances()
    family, hamiltonian = StateFamily(family), HamiltonianKind(hamiltonian)
    xs = grid.values()
    points = []
    for x in xs:
        base = {"gamma": grid.gamma, "alpha": grid.alpha, "jt": grid.jt, grid.axis: float(x)}
        points.append((family, hamiltonian, ModelParams(state_family=family, hamiltonian=hamiltonian, j=grid.j, **base)))
    results = ordered_map(_audit_point, points, workers)

    report = DiscrepancyReport(
        title=f"closed-form vs numeric: {family.value}/{hamiltonian.value}",
        grid={**grid.to_dict(), "families": [family.value], "hamiltonians": [hamiltonian.value]},
    )
    for measure in (SQUASHED, CONCURRENCE):
        rows = [
            {"x": float(x), "closed": r[measure]["closed"], "numeric": r[measure]["numeric"],
             "imag": r[measure]["imag"], "issue": r[measure]["issue"]}
            for x, r in zip(xs, results)
        ]  # fmt: skip
        comparison = _summarise(measure, rows, tol)
        comparison.label = f"{family.value}/{hamiltonian.value} over {grid.axis}"
        report.comparisons.append(comparison)
    return report


def _summarise(measure, rows, tol) -> MeasureComparison:
    notes = []
    good = [r for r in rows if r["closed"] is not None]
    issues = [r for r in rows if r["issue"] is not None]
    if issues:
        notes.append(f"{len(issues)} grid point(s) raised: {issues[0]['issue']}")
    for r in good:
        r["deviation"] = abs(r["closed"] - r["numeric"])
    max_imag = max((r["imag"] for r in rows), default=0.0)
    if max_imag > tol.imag_flag:
        notes.append(f"closed form carries imaginary parts up to {max_imag:.3e}")

    if good:
        worst = max(good, key=lambda r: r["deviation"])
        max_dev, argmax = worst["deviation"], worst["x"]
        c = np.array([r["closed"] for r in good])
        nv = np.array([r["numeric"] for r in good])
        denom = float(nv @ nv)
        scale = float(c @ nv) / denom if denom > 0 else None
        scaled = float(np.max(np.abs(c - scale * nv))) if scale is not None else None
    else:
        max_dev, argmax, scale, scaled = math.inf, None, None, None

    ok = not issues and max_dev < tol.compare_pass and max_imag <= tol.imag_flag
    if not ok and scaled is not None and scaled < tol.compare_pass and abs(scale - 1.0) > 1e-6:
        notes.append(f"agrees with the numeric curve after rescaling by {scale:.6f}")
    return MeasureComparison(
        measure=measure,
        max_abs_deviation=max_dev,
        argmax=argmax,
        scale=scale,
        scaled_deviation=scaled,
        max_imag=max_imag,
        status="PASS" if ok else "FLAGGED",
        notes=notes,
        table=[] if ok else rows,
    )
