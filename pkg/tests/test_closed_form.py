import cmath
import math

import numpy as np
import pytest
import sympy

from sqconc.closed_form import (
    B,
    ComplexSpectrumError,
    SpectrumQuadruple,
    closed_concurrence,
    closed_spectrum,
    closed_sqe,
    closed_sqe_complex,
    compare_closed_vs_numeric,
    eval_symbols,
    _xlog,
)
from sqconc.exceptions import FormulaDomainError
from sqconc.measures import measure_point, spin_flip
from sqconc.records import SweepGrid
from sqconc.states import ModelParams, mems, werner


def P(gamma, alpha=0.0, jt=0.0, fam="werner", ham="h1"):
    return ModelParams(gamma, alpha, jt, fam, ham)


def test_b_is_one_over_eight_ln2():
    assert B == pytest.approx(1 / (8 * math.log(2)), abs=1e-6)


def test_symbol_examples():
    s = eval_symbols(P(0.5, 0.6, 0.0))
    assert s.a == 1
    assert s.f == 0.5 and s.f_p == 0.75 and s.v == pytest.approx(0.625)
    assert s.g == pytest.approx(0.64)
    assert s.delta == pytest.approx(1 / 3)
    assert s.T == pytest.approx(2 * 0.5 / 3)
    for jt in np.linspace(0, 3, 13):
        assert abs(eval_symbols(P(0.3, 0.4, float(jt))).a) == pytest.approx(1, abs=1e-15)


def test_werner_h2_unity_at_full_mixing_weight():
    # every log term carries a vanishing coefficient or log(1)
    assert closed_sqe("werner", "h2", P(1.0, ham="h2")) == pytest.approx(1.0, abs=1e-6)


def test_mems_h1_origin_matches_hand_value():
    # jt = 0, gamma = 0: delta = 1/3 and only the real logs survive
    hand = (4 * B / 3) * math.log(1 / 3) - (16 * B / 3) * math.log(2 / 3)
    assert hand == pytest.approx(0.1258146673, abs=1e-6)
    assert closed_sqe("mems", "h1", P(0.0, fam="mems")) == pytest.approx(hand, abs=1e-10)
    numeric = measure_point(P(0.0, fam="mems"))[0].value
    assert closed_sqe("mems", "h1", P(0.0, fam="mems")) == pytest.approx(numeric, abs=1e-6)


def test_mems_h2_spectrum_simplifies_to_squares():
    gamma, delta = sympy.symbols("gamma delta", real=True)
    T = 2 * gamma * delta
    third = gamma**2 / 4 + delta**2 - T / 2
    fourth = (T + gamma**2 / 2 + 2 * delta**2) / 2
    assert sympy.simplify(third - (gamma / 2 - delta) ** 2) == 0
    assert sympy.simplify(fourth - (gamma / 2 + delta) ** 2) == 0
    for g in (0.1, 0.5, 0.9):
        d = 1 / 3 if g < 2 / 3 else g / 2
        vals = sorted(z.real for z in closed_spectrum("mems", "h2", P(g, fam="mems", ham="h2")).values)
        np.testing.assert_allclose(vals, sorted([0, 0, (g / 2 - d) ** 2, (g / 2 + d) ** 2]), atol=1e-14)


@pytest.mark.parametrize("g", [0.0, 0.3, 0.5, 0.8, 1.0])
def test_werner_h1_origin_spectrum_matches_rho_rhotilde(g):
    rho = werner(g)
    numeric = np.sort(np.linalg.eigvals(rho @ spin_flip(rho)).real)
    closed = closed_spectrum("werner", "h1", P(g))
    assert closed.max_imag < 1e-12
    np.testing.assert_allclose(np.sort([z.real for z in closed.values]), numeric, atol=1e-12)


@pytest.mark.parametrize("g", [0.2, 0.5, 0.9])
def test_mems_h2_spectrum_matches_rho_rhotilde(g):
    rho = mems(g)
    numeric = np.sort(np.linalg.eigvals(rho @ spin_flip(rho)).real)
    closed = closed_spectrum("mems", "h2", P(g, fam="mems", ham="h2"))
    np.testing.assert_allclose(np.sort([z.real for z in closed.values]), numeric, atol=1e-12)


def test_h2_forms_do_not_depend_on_alpha_or_jt():
    for fam in ("werner", "mems"):
        base = closed_sqe(fam, "h2", P(0.6, 0.0, 0.0, fam, "h2"))
        spec = closed_spectrum(fam, "h2", P(0.6, 0.0, 0.0, fam, "h2")).values
        for alpha, jt in [(0.3, 0.4), (0.9, 1.7), (1.0, 2.0)]:
            assert closed_sqe(fam, "h2", P(0.6, alpha, jt, fam, "h2")) == base
            assert closed_spectrum(fam, "h2", P(0.6, alpha, jt, fam, "h2")).values == spec


def test_closed_concurrence_examples():
    assert closed_concurrence("werner", "h2", P(0.5, ham="h2")) == pytest.approx(0.25, abs=1e-12)
    assert closed_concurrence("werner", "h2", P(0.2, ham="h2")) == 0.0
    assert closed_concurrence("mems", "h2", P(0.4, fam="mems", ham="h2")) == pytest.approx(0.4, abs=1e-12)
    assert closed_concurrence("werner", "h1", P(0.7)) == pytest.approx(0.55, abs=1e-9)


def test_spectrum_quadruple_guards():
    assert SpectrumQuadruple((0.25, 0.01, 0.01, 0.01)).concurrence() == pytest.approx(0.2)
    with pytest.raises(ComplexSpectrumError):
        SpectrumQuadruple((0.25 + 1e-3j, 0, 0, 0)).concurrence()
    with pytest.raises(ComplexSpectrumError):
        SpectrumQuadruple((0.25, -1e-3, 0, 0)).concurrence()


def test_xlog_domain():
    assert _xlog(0.0, 0.0, "t") == 0
    assert _xlog(2.0, math.e, "t") == pytest.approx(2.0)
    assert _xlog(1.0, -1 + 0.5j, "t") == pytest.approx(cmath.log(-1 + 0.5j))
    with pytest.raises(FormulaDomainError):
        _xlog(1.0, 0.0, "t")
    with pytest.raises(FormulaDomainError):
        _xlog(1.0, -2.0, "t")


def test_closed_sqe_real_part():
    z = closed_sqe_complex("werner", "h1", P(0.6, 0.6, 0.6))
    assert closed_sqe("werner", "h1", P(0.6, 0.6, 0.6)) == z.real


def test_comparator_passes_werner_h1_over_gamma():
    report = compare_closed_vs_numeric("werner", "h1", SweepGrid("gamma", 0, 1, steps=21))
    sq, conc = report.comparisons
    assert sq.status == "PASS" and sq.max_abs_deviation < 1e-6
    assert sq.scale == pytest.approx(1, abs=1e-5)
    assert sq.table == [] and sq.label == "werner/h1 over gamma"
    assert conc.status == "PASS"


def test_comparator_flags_h2_jt_sweep_with_table():
    grid = SweepGrid("jt", 0, 2, steps=11, gamma=0.600001, alpha=0.600001)
    report = compare_closed_vs_numeric("werner", "h2", grid)
    assert report.flagged
    sq = report.comparisons[0]
    assert sq.status == "FLAGGED"
    assert len(sq.table) == 11 and {"x", "closed", "numeric"} <= set(sq.table[0])
    assert sq.max_abs_deviation == pytest.approx(max(r["deviation"] for r in sq.table))


def test_comparator_is_worker_independent():
    grid = SweepGrid("jt", 0, 2, steps=9, gamma=0.5, alpha=0.3)
    a = compare_closed_vs_numeric("mems", "h1", grid, workers=1).to_dict()
    b = compare_closed_vs_numeric("mems", "h1", grid, workers=2).to_dict()
    assert a == b
